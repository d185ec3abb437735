#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kthstop {

// Stage-set stopping rule: accept the stage-j candidate iff its relative
// rank lies in S_j. The rule stops at min{ j : X_j in S_j }; stage n accepts
// everything, so stopping is guaranteed. This representation is fully
// general for the problems solved here, since the optimal decision at stage
// j depends on the observation history only through X_j.
class StagePolicy {
public:
    explicit StagePolicy(int n) : n_(n), accept_(static_cast<std::size_t>(n)) {
        if (n < 1) throw std::invalid_argument("StagePolicy: n must be >= 1");
        for (int j = 1; j < n; ++j) accept_[j - 1].assign(j, false);
        accept_[n - 1].assign(n, true);
    }

    int n() const { return n_; }

    bool accepts(int j, int x) const {
        check_range(j, x);
        return accept_[j - 1][x - 1];
    }

    void set(int j, int x, bool on) {
        check_range(j, x);
        if (j == n_ && !on)
            throw std::invalid_argument("StagePolicy: stage n always accepts");
        accept_[j - 1][x - 1] = on;
    }

    int accept_count(int j) const {
        check_stage(j);
        int c = 0;
        for (const bool b : accept_[j - 1]) c += b ? 1 : 0;
        return c;
    }

    std::vector<int> accept_list(int j) const {
        check_stage(j);
        std::vector<int> xs;
        for (int x = 1; x <= j; ++x)
            if (accept_[j - 1][x - 1]) xs.push_back(x);
        return xs;
    }

    friend bool operator==(const StagePolicy& a, const StagePolicy& b) {
        return a.n_ == b.n_ && a.accept_ == b.accept_;
    }

private:
    void check_stage(int j) const {
        if (j < 1 || j > n_)
            throw std::out_of_range("StagePolicy: stage " + std::to_string(j) + " outside 1.." +
                                    std::to_string(n_));
    }
    void check_range(int j, int x) const {
        check_stage(j);
        if (x < 1 || x > j)
            throw std::out_of_range("StagePolicy: rank " + std::to_string(x) + " outside 1.." +
                                    std::to_string(j));
    }

    int n_;
    std::vector<std::vector<bool>> accept_;
};

// Baseline rule that rejects everything until the forced stop at stage n.
inline StagePolicy stop_only_at_n(int n) { return StagePolicy(n); }

}  // namespace kthstop
