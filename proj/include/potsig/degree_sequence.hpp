#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "potsig/errors.hpp"

namespace potsig {

/// A non-increasing list of non-negative integers d1 >= d2 >= ... >= dn >= 0.
///
/// Graphicality is a property checked separately (see sequences.hpp); this
/// type only guarantees the ordering.
class DegreeSequence {
public:
    DegreeSequence() = default;

    explicit DegreeSequence(std::vector<int> terms) : terms_(std::move(terms)) {
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (terms_[i] < 0)
                throw InvalidSequenceError("negative term at position " + std::to_string(i));
            if (i > 0 && terms_[i] > terms_[i - 1])
                throw InvalidSequenceError("sequence is not non-increasing at position " +
                                           std::to_string(i));
        }
    }

    DegreeSequence(std::initializer_list<int> terms) : DegreeSequence(std::vector<int>(terms)) {}

    int size() const { return static_cast<int>(terms_.size()); }
    bool empty() const { return terms_.empty(); }
    int operator[](int i) const { return terms_[static_cast<std::size_t>(i)]; }
    int front() const { return terms_.front(); }
    int back() const { return terms_.back(); }
    std::span<const int> terms() const { return terms_; }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    auto operator<=>(const DegreeSequence&) const = default;

private:
    std::vector<int> terms_;
};

/// Sum of the terms.
inline long sigma(const DegreeSequence& s) {
    return std::accumulate(s.begin(), s.end(), 0L);
}

/// Sorts arbitrary degrees into a DegreeSequence.
inline DegreeSequence sorted_sequence(std::vector<int> degrees) {
    std::sort(degrees.begin(), degrees.end(), std::greater<>());
    return DegreeSequence(std::move(degrees));
}

/// `k` copies of `value`.
inline DegreeSequence constant_sequence(int value, int k) {
    return DegreeSequence(std::vector<int>(static_cast<std::size_t>(k), value));
}

/// Bookkeeping left behind when a vertex is deleted from a realization.
///
/// `positions` are degree ranks in the reduced sequence (0 = largest degree,
/// ties by lowest label) of the vertices that lost one degree.
struct DecrementRecord {
    std::vector<int> positions;
    int deleted_degree = 0;

    bool operator==(const DecrementRecord&) const = default;
};

inline constexpr std::size_t kMaxLiteralTerms = 4096;

// Sequence literal grammar: comma separated items, each either `v` or `v^m`
// (m >= 1 copies of v). The expansion must be non-increasing.
inline DegreeSequence parse_sequence(std::string_view text) {
    if (text.empty())
        throw ParseError("empty sequence literal");

    auto parse_int = [&](std::string_view tok) {
        int value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
            throw ParseError("malformed integer '" + std::string(tok) + "' in sequence literal");
        return value;
    };

    std::vector<int> terms;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                       : comma - start);
        if (item.empty())
            throw ParseError("empty item in sequence literal");
        auto caret = item.find('^');
        int value = 0;
        int count = 1;
        if (caret == std::string_view::npos) {
            value = parse_int(item);
        } else {
            value = parse_int(item.substr(0, caret));
            count = parse_int(item.substr(caret + 1));
            if (count < 1)
                throw ParseError("repeat count must be positive in '" + std::string(item) + "'");
        }
        if (value < 0)
            throw ParseError("negative term in sequence literal");
        if (!terms.empty() && value > terms.back())
            throw ParseError("sequence literal is not non-increasing: '" + std::string(text) + "'");
        if (terms.size() + static_cast<std::size_t>(count) > kMaxLiteralTerms)
            throw ParseError("sequence literal expands to more than " +
                             std::to_string(kMaxLiteralTerms) + " terms");
        terms.insert(terms.end(), static_cast<std::size_t>(count), value);
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return DegreeSequence(std::move(terms));
}

/// `4,3,3,3,3,3,1`
inline std::string to_plain(const DegreeSequence& s) {
    std::string out;
    for (int i = 0; i < s.size(); ++i) {
        if (i > 0)
            out += ',';
        out += std::to_string(s[i]);
    }
    return out;
}

/// `4^1,3^5,1^1`
inline std::string to_compact(const DegreeSequence& s) {
    std::string out;
    int i = 0;
    while (i < s.size()) {
        int j = i;
        while (j < s.size() && s[j] == s[i])
            ++j;
        if (!out.empty())
            out += ',';
        out += std::to_string(s[i]) + '^' + std::to_string(j - i);
        i = j;
    }
    return out;
}

}  // namespace potsig
