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

#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <iterator>
#include <string>
#include <vector>

namespace rollnet {

/// Stable vertex label. Ids are never reused after a vertex is deleted.
enum class VertexId : std::uint32_t {};

constexpr std::uint32_t index(VertexId v) { return static_cast<std::uint32_t>(v); }
constexpr VertexId vertex(std::uint32_t i) { return static_cast<VertexId>(i); }

std::ostream &operator<<(std::ostream &os, VertexId v);

/// Packed set of vertex ids.
///
/// Storage is kept trimmed (no trailing zero words) so that equality,
/// ordering and hashing depend only on the members.
class VertexSet {
   public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    VertexSet() = default;
    VertexSet(std::initializer_list<VertexId> ids);
    template <typename It>
    VertexSet(It first, It last) {
        for (; first != last; ++first) insert(*first);
    }

    bool contains(VertexId v) const;
    void insert(VertexId v);
    void erase(VertexId v);
    void toggle(VertexId v);
    void clear() { words_.clear(); }

    bool empty() const { return words_.empty(); }
    std::size_t size() const;

    VertexSet &operator^=(const VertexSet &other);
    VertexSet &operator|=(const VertexSet &other);
    VertexSet &operator&=(const VertexSet &other);
    /// Set difference.
    VertexSet &operator-=(const VertexSet &other);

    friend VertexSet operator^(VertexSet a, const VertexSet &b) { return a ^= b; }
    friend VertexSet operator|(VertexSet a, const VertexSet &b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet &b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet &b) { return a -= b; }

    bool intersects(const VertexSet &other) const;
    bool is_subset_of(const VertexSet &other) const;

    /// Smallest member. Precondition: !empty().
    VertexId min() const;

    std::vector<VertexId> to_vector() const;

    bool operator==(const VertexSet &other) const = default;
    /// Orders by (size, then lexicographic member list).
    std::strong_ordering operator<=>(const VertexSet &other) const;

    std::size_t hash() const;

    class const_iterator {
       public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = VertexId;
        using difference_type = std::ptrdiff_t;
        using pointer = const VertexId *;
        using reference = VertexId;

        const_iterator() = default;
        VertexId operator*() const { return vertex(static_cast<std::uint32_t>(word_ * kWordBits + std::countr_zero(bits_))); }
        const_iterator &operator++() {
            bits_ &= bits_ - 1;
            advance();
            return *this;
        }
        const_iterator operator++(int) {
            auto tmp = *this;
            ++*this;
            return tmp;
        }
        bool operator==(const const_iterator &o) const { return word_ == o.word_ && bits_ == o.bits_; }

       private:
        friend class VertexSet;
        const_iterator(const std::vector<Word> *words, std::size_t word) : words_(words), word_(word) {
            bits_ = word_ < words_->size() ? (*words_)[word_] : 0;
            advance();
        }
        void advance() {
            while (bits_ == 0 && word_ < words_->size()) {
                ++word_;
                bits_ = word_ < words_->size() ? (*words_)[word_] : 0;
            }
        }
        const std::vector<Word> *words_ = nullptr;
        std::size_t word_ = 0;
        Word bits_ = 0;
    };

    const_iterator begin() const { return {&words_, 0}; }
    const_iterator end() const { return {&words_, words_.size()}; }

   private:
    void trim();
    std::vector<Word> words_;
};

std::ostream &operator<<(std::ostream &os, const VertexSet &s);
std::string to_string(const VertexSet &s);

}  // namespace rollnet

template <>
struct std::hash<rollnet::VertexSet> {
    std::size_t operator()(const rollnet::VertexSet &s) const { return s.hash(); }
};
