// Copyright 2026 The rollnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rollnet/vertex_set.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <sstream>

namespace rollnet {

std::ostream &operator<<(std::ostream &os, VertexId v) { return os << index(v); }

VertexSet::VertexSet(std::initializer_list<VertexId> ids) {
    for (auto v : ids) insert(v);
}

bool VertexSet::contains(VertexId v) const {
    auto w = index(v) / kWordBits;
    return w < words_.size() && ((words_[w] >> (index(v) % kWordBits)) & 1U);
}

void VertexSet::insert(VertexId v) {
    auto w = index(v) / kWordBits;
    if (w >= words_.size()) words_.resize(w + 1, 0);
    words_[w] |= Word{1} << (index(v) % kWordBits);
}

void VertexSet::erase(VertexId v) {
    auto w = index(v) / kWordBits;
    if (w >= words_.size()) return;
    words_[w] &= ~(Word{1} << (index(v) % kWordBits));
    trim();
}

void VertexSet::toggle(VertexId v) {
    auto w = index(v) / kWordBits;
    if (w >= words_.size()) words_.resize(w + 1, 0);
    words_[w] ^= Word{1} << (index(v) % kWordBits);
    trim();
}

std::size_t VertexSet::size() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

VertexSet &VertexSet::operator^=(const VertexSet &other) {
    if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
    for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] ^= other.words_[i];
    trim();
    return *this;
}

VertexSet &VertexSet::operator|=(const VertexSet &other) {
    if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
    for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
}

VertexSet &VertexSet::operator&=(const VertexSet &other) {
    if (words_.size() > other.words_.size()) words_.resize(other.words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    trim();
    return *this;
}

VertexSet &VertexSet::operator-=(const VertexSet &other) {
    auto n = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < n; ++i) words_[i] &= ~other.words_[i];
    trim();
    return *this;
}

bool VertexSet::intersects(const VertexSet &other) const {
    auto n = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (words_[i] & other.words_[i]) return true;
    }
    return false;
}

bool VertexSet::is_subset_of(const VertexSet &other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
        Word o = i < other.words_.size() ? other.words_[i] : 0;
        if (words_[i] & ~o) return false;
    }
    return true;
}

VertexId VertexSet::min() const {
    assert(!empty());
    return *begin();
}

std::vector<VertexId> VertexSet::to_vector() const { return {begin(), end()}; }

std::strong_ordering VertexSet::operator<=>(const VertexSet &other) const {
    if (auto c = size() <=> other.size(); c != 0) return c;
    auto a = begin();
    auto b = other.begin();
    for (; a != end(); ++a, ++b) {
        if (auto c = index(*a) <=> index(*b); c != 0) return c;
    }
    return std::strong_ordering::equal;
}

std::size_t VertexSet::hash() const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto w : words_) {
        h ^= static_cast<std::size_t>(w);
        h *= 0x100000001b3ULL;
        h ^= h >> 29;
    }
    return h;
}

void VertexSet::trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

std::ostream &operator<<(std::ostream &os, const VertexSet &s) {
    os << '{';
    bool first = true;
    for (auto v : s) {
        if (!first) os << ',';
        os << v;
        first = false;
    }
    return os << '}';
}

std::string to_string(const VertexSet &s) {
    std::ostringstream ss;
    ss << s;
    return ss.str();
}

}  // namespace rollnet
