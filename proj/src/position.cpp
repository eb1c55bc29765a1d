// SPDX-License-Identifier: Apache-2.0
#include "termcalc/position.hpp"

#include <algorithm>
#include <set>

#include "termcalc/errors.hpp"

namespace termcalc {

Position::Position(std::vector<int> steps) : steps_(std::move(steps)) {
    for (int s : steps_) {
        if (s < 1) {
            throw ValidationError("position steps must be 1-based child indices");
        }
    }
}

Position Position::parse(const std::string& text) {
    if (text.empty() || text == "e") {
        return root();
    }
    std::vector<int> steps;
    if (text.find('.') != std::string::npos) {
        std::size_t begin = 0;
        while (begin <= text.size()) {
            std::size_t end = text.find('.', begin);
            if (end == std::string::npos) {
                end = text.size();
            }
            const std::string part = text.substr(begin, end - begin);
            if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
                throw ParseError("invalid position component '" + part + "' in '" + text + "'", begin);
            }
            steps.push_back(std::stoi(part));
            begin = end + 1;
            if (end == text.size()) {
                break;
            }
        }
    } else {
        for (std::size_t i = 0; i < text.size(); ++i) {
            const char c = text[i];
            if (c < '0' || c > '9') {
                throw ParseError(std::string("invalid character '") + c + "' in position '" + text + "'", i);
            }
            steps.push_back(c - '0');
        }
    }
    return Position(std::move(steps));
}

Position Position::child(int i) const {
    std::vector<int> steps = steps_;
    steps.push_back(i);
    return Position(std::move(steps));
}

Position Position::then(const Position& q) const {
    std::vector<int> steps = steps_;
    steps.insert(steps.end(), q.steps_.begin(), q.steps_.end());
    return Position(std::move(steps));
}

Position Position::parent() const {
    if (is_root()) {
        throw ValidationError("the root position has no parent");
    }
    return Position(std::vector<int>(steps_.begin(), steps_.end() - 1));
}

bool Position::is_prefix_of(const Position& q) const {
    if (steps_.size() > q.steps_.size()) {
        return false;
    }
    return std::equal(steps_.begin(), steps_.end(), q.steps_.begin());
}

bool Position::is_proper_prefix_of(const Position& q) const {
    return steps_.size() < q.steps_.size() && is_prefix_of(q);
}

bool Position::comparable(const Position& p, const Position& q) {
    return p.is_prefix_of(q) || q.is_prefix_of(p);
}

std::string Position::str(bool single_digit) const {
    if (is_root()) {
        return "e";
    }
    std::string out;
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        if (!single_digit && i > 0) {
            out += '.';
        }
        out += std::to_string(steps_[i]);
    }
    return out;
}

std::strong_ordering Position::operator<=>(const Position& other) const {
    if (auto c = steps_.size() <=> other.steps_.size(); c != 0) {
        return c;
    }
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        if (auto c = steps_[i] <=> other.steps_[i]; c != 0) {
            return c;
        }
    }
    return std::strong_ordering::equal;
}

std::vector<Position> minimal_positions(const std::vector<Position>& ps) {
    std::set<Position> sorted(ps.begin(), ps.end());
    std::vector<Position> out;
    for (const Position& p : sorted) {
        bool dominated = false;
        for (const Position& q : out) {
            if (q.is_prefix_of(p)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            out.push_back(p);
        }
    }
    return out;
}

bool is_antichain(const std::vector<Position>& ps) {
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            if (Position::comparable(ps[i], ps[j])) {
                return false;
            }
        }
    }
    return true;
}

} // namespace termcalc
