#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace kthstop {

// Selection target: either one absolute rank k or a set of acceptable ranks.
// Ranks are stored sorted and deduplicated; validity against a concrete n is
// checked at the point of use via validate(n).
class Goal {
public:
    static Goal single(int k) {
        if (k < 1) throw std::invalid_argument("Goal: rank must be >= 1");
        Goal g;
        g.ranks_ = {k};
        g.single_ = true;
        return g;
    }

    static Goal rank_set(std::vector<int> ranks) {
        std::sort(ranks.begin(), ranks.end());
        ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
        if (ranks.empty()) throw std::invalid_argument("Goal: rank set must be nonempty");
        if (ranks.front() < 1) throw std::invalid_argument("Goal: ranks must be >= 1");
        Goal g;
        g.ranks_ = std::move(ranks);
        g.single_ = false;
        return g;
    }

    const std::vector<int>& ranks() const { return ranks_; }
    bool is_single() const { return single_; }
    int single_rank() const {
        if (!single_) throw std::logic_error("Goal: not a single-rank goal");
        return ranks_.front();
    }
    int min_rank() const { return ranks_.front(); }
    int max_rank() const { return ranks_.back(); }
    int size() const { return static_cast<int>(ranks_.size()); }

    bool contains(int rank) const {
        return std::binary_search(ranks_.begin(), ranks_.end(), rank);
    }

    void validate(int n) const {
        if (ranks_.back() > n)
            throw std::domain_error("Goal: rank " + std::to_string(ranks_.back()) +
                                    " outside 1.." + std::to_string(n));
    }

    std::string describe() const {
        if (single_) return "k=" + std::to_string(ranks_.front());
        std::string s = "{";
        for (std::size_t i = 0; i < ranks_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(ranks_[i]);
        }
        return s + "}";
    }

    // Goals with the same rank set describe the same stopping problem,
    // whichever way they were constructed.
    friend bool operator==(const Goal& a, const Goal& b) { return a.ranks_ == b.ranks_; }
    friend bool operator<(const Goal& a, const Goal& b) { return a.ranks_ < b.ranks_; }

private:
    Goal() = default;
    std::vector<int> ranks_;
    bool single_ = true;
};

}  // namespace kthstop
