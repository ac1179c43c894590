#include "edgeidle/tracker/hungarian.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "edgeidle/error.hpp"

namespace edgeidle::tracker {
namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct Solution {
    std::vector<std::size_t> col_of_row;
    std::vector<std::size_t> row_of_col;
    std::vector<double> u;
    std::vector<double> v;
};

// Shortest augmenting path with potentials on a square n x n matrix.
Solution solve_square(const std::vector<double>& a, std::size_t n) {
    const double inf = std::numeric_limits<double>::infinity();
    // 1-based working arrays; index 0 is the virtual source column.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);

    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) {
                    continue;
                }
                const double cur = a[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    Solution s;
    s.col_of_row.assign(n, kNone);
    s.row_of_col.assign(n, kNone);
    s.u.assign(u.begin() + 1, u.end());
    s.v.assign(v.begin() + 1, v.end());
    for (std::size_t j = 1; j <= n; ++j) {
        if (p[j] != 0) {
            s.col_of_row[p[j] - 1] = j - 1;
            s.row_of_col[j - 1] = p[j] - 1;
        }
    }
    return s;
}

class TightGraphRepair {
public:
    TightGraphRepair(const std::vector<double>& a, std::size_t n, Solution& s, double tol)
        : a_(a), n_(n), s_(s), tol_(tol), fixed_(n, 0) {}

    bool tight(std::size_t r, std::size_t c) const {
        return a_[r * n_ + c] - s_.u[r] - s_.v[c] <= tol_;
    }

    // Rows [0, real_rows) are processed in order; columns [0, real_cols) are
    // preferred in index order over every column >= real_cols.
    void run(std::size_t real_rows, std::size_t real_cols, const std::vector<char>& admissible) {
        for (std::size_t i = 0; i < real_rows; ++i) {
            const std::size_t cur = s_.col_of_row[i];
            const bool matched = cur < real_cols && admissible[i * real_cols + cur];
            const std::size_t limit = matched ? cur : real_cols;
            for (std::size_t j = 0; j < limit; ++j) {
                if (admissible[i * real_cols + j] && tight(i, j) && reassign(i, j)) {
                    break;
                }
            }
            fixed_[i] = 1;
        }
    }

private:
    bool reassign(std::size_t row, std::size_t col) {
        const std::size_t owner = s_.row_of_col[col];
        if (owner == kNone || fixed_[owner]) {
            return false;
        }
        const std::size_t freed = s_.col_of_row[row];

        // BFS over alternating paths from `owner` to `freed`, never moving
        // fixed rows and never touching `row` or `col`.
        std::vector<std::size_t> parent_col(n_, kNone);  // col -> col reached before it
        std::vector<char> seen_col(n_, 0);
        std::vector<char> seen_row(n_, 0);
        std::deque<std::pair<std::size_t, std::size_t>> queue;  // (row, col it leaves)
        queue.emplace_back(owner, kNone);
        seen_row[owner] = 1;
        seen_row[row] = 1;
        seen_col[col] = 1;
        std::vector<std::size_t> via(n_, kNone);  // col -> row that takes it
        std::size_t found = kNone;
        while (!queue.empty() && found == kNone) {
            const auto [r, from] = queue.front();
            queue.pop_front();
            for (std::size_t c = 0; c < n_; ++c) {
                if (seen_col[c] || !tight(r, c)) {
                    continue;
                }
                seen_col[c] = 1;
                via[c] = r;
                parent_col[c] = from;
                if (c == freed) {
                    found = c;
                    break;
                }
                const std::size_t next = s_.row_of_col[c];
                if (next == kNone || seen_row[next] || fixed_[next]) {
                    continue;
                }
                seen_row[next] = 1;
                queue.emplace_back(next, c);
            }
        }
        if (found == kNone) {
            return false;
        }
        s_.col_of_row[row] = col;
        s_.row_of_col[col] = row;
        for (std::size_t c = found; c != kNone; c = parent_col[c]) {
            const std::size_t r = via[c];
            s_.col_of_row[r] = c;
            s_.row_of_col[c] = r;
        }
        return true;
    }

    const std::vector<double>& a_;
    std::size_t n_;
    Solution& s_;
    double tol_;
    std::vector<char> fixed_;
};

}  // namespace

Assignment hungarian_assign(const CostMatrix& cost, double gate) {
    const std::size_t rows = cost.rows();
    const std::size_t cols = cost.cols();
    Assignment out;
    if (std::isnan(gate)) {
        throw ValidationError("hungarian_assign: gate is NaN");
    }
    if (rows == 0 || cols == 0) {
        for (std::size_t r = 0; r < rows; ++r) out.unmatched_rows.push_back(r);
        for (std::size_t c = 0; c < cols; ++c) out.unmatched_cols.push_back(c);
        return out;
    }

    std::vector<char> admissible(rows * cols);
    double scale = std::isfinite(gate) ? std::abs(gate) : 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const double x = cost(r, c);
            if (std::isnan(x) || x == -std::numeric_limits<double>::infinity()) {
                throw ValidationError("hungarian_assign: cost entries must be finite or +inf");
            }
            admissible[r * cols + c] = std::isfinite(x) && x <= gate;
            if (std::isfinite(x)) {
                scale = std::max(scale, std::abs(x));
            }
        }
    }

    const bool gated = std::isfinite(gate);
    const std::size_t n = gated ? rows + cols : std::max(rows, cols);
    // Inadmissible pairs get a cost that no optimal solution will pick;
    // they are filtered from the result in any case.
    const double blocked = gated ? gate + 1.0 + scale : (scale + 1.0) * static_cast<double>(2 * n + 1);
    std::vector<double> a(n * n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            double x = 0.0;
            if (r < rows && c < cols) {
                x = admissible[r * cols + c] ? cost(r, c) : blocked;
            } else if (gated && (r < rows) != (c < cols)) {
                x = gate / 2.0;
            }
            a[r * n + c] = x;
        }
    }

    Solution s = solve_square(a, n);
    const double tol = 1e-9 * std::max(1.0, std::max(scale, std::abs(blocked)));
    TightGraphRepair(a, n, s, tol).run(rows, cols, admissible);

    std::vector<char> col_used(cols, 0);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t c = s.col_of_row[r];
        if (c < cols && admissible[r * cols + c]) {
            out.matches.emplace_back(r, c);
            out.total_cost += cost(r, c);
            col_used[c] = 1;
        } else {
            out.unmatched_rows.push_back(r);
        }
    }
    for (std::size_t c = 0; c < cols; ++c) {
        if (!col_used[c]) {
            out.unmatched_cols.push_back(c);
        }
    }
    return out;
}

}  // namespace edgeidle::tracker
