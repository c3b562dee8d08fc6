#include "arbortile/simplex.hpp"

#include <string>

#include "arbortile/errors.hpp"

namespace arbortile {

namespace {

struct Tableau {
    int m, n;                           // constraint rows, structural columns
    int width;                          // n + m slacks + 1 rhs
    std::vector<std::vector<Rat>> row;  // m constraint rows
    std::vector<std::vector<Rat>> obj;  // reduced-cost rows, one per level
    std::vector<int> basis;             // basis[i] = column occupying row i

    Tableau(const LpProblem& p)
        : m(p.rows), n(static_cast<int>(p.cols.size())), width(n + m + 1) {
        row.assign(m, std::vector<Rat>(width, Rat(0)));
        for (int j = 0; j < n; ++j)
            for (const auto& [r, coeff] : p.cols[j]) row[r][j] = coeff;
        for (int i = 0; i < m; ++i) {
            row[i][n + i] = 1;
            row[i][width - 1] = p.rhs[i];
        }
        obj.assign(p.objectives.size(), std::vector<Rat>(width, Rat(0)));
        for (size_t l = 0; l < p.objectives.size(); ++l)
            for (int j = 0; j < n; ++j) obj[l][j] = p.objectives[l][j];
        basis.resize(m);
        for (int i = 0; i < m; ++i) basis[i] = n + i;
    }

    // lexicographic sign of the reduced-cost vector at column j
    bool lex_positive(int j) const {
        for (const auto& o : obj) {
            int s = sgn(o[j]);
            if (s > 0) return true;
            if (s < 0) return false;
        }
        return false;
    }

    void pivot(int r, int c) {
        Rat inv = 1 / row[r][c];
        for (int j = 0; j < width; ++j) row[r][j] *= inv;
        for (int i = 0; i < m; ++i) {
            if (i == r || row[i][c] == 0) continue;
            Rat f = row[i][c];
            for (int j = 0; j < width; ++j) row[i][j] -= f * row[r][j];
        }
        for (auto& o : obj) {
            if (o[c] == 0) continue;
            Rat f = o[c];
            for (int j = 0; j < width; ++j) o[j] -= f * row[r][j];
        }
        basis[r] = c;
    }
};

} // namespace

LpSolution solve_lp(const LpProblem& p) {
    if (static_cast<int>(p.rhs.size()) != p.rows) throw BadInput("LP rhs size mismatch");
    for (const auto& b : p.rhs)
        if (b < 0) throw BadInput("LP rhs must be nonnegative (slack start)");
    for (const auto& o : p.objectives)
        if (o.size() != p.cols.size()) throw BadInput("LP objective size mismatch");
    for (const auto& col : p.cols)
        for (const auto& [r, c] : col) {
            (void)c;
            if (r < 0 || r >= p.rows) throw BadInput("LP column row index out of range");
        }

    Tableau t(p);
    LpSolution sol;
    while (true) {
        int enter = -1;
        for (int j = 0; j < t.n + t.m; ++j)
            if (t.lex_positive(j)) {
                enter = j;
                break; // Bland: first improving column
            }
        if (enter < 0) break;
        int leave = -1;
        Rat best_ratio;
        for (int i = 0; i < t.m; ++i) {
            if (t.row[i][enter] <= 0) continue;
            Rat ratio = t.row[i][t.width - 1] / t.row[i][enter];
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio && t.basis[i] < t.basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave < 0) throw Error("LP unbounded");
        t.pivot(leave, enter);
        ++sol.pivots;
    }

    sol.x.assign(t.n, Rat(0));
    for (int i = 0; i < t.m; ++i)
        if (t.basis[i] < t.n) sol.x[t.basis[i]] = t.row[i][t.width - 1];
    sol.level_values.resize(t.obj.size());
    for (size_t l = 0; l < t.obj.size(); ++l) sol.level_values[l] = -t.obj[l][t.width - 1];
    sol.dual.assign(t.m, Rat(0));
    if (!t.obj.empty())
        for (int i = 0; i < t.m; ++i) sol.dual[i] = -t.obj[0][t.n + i];
    return sol;
}

bool lp_check_certificate(const LpProblem& p, const LpSolution& s, std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if (p.objectives.empty()) return fail("no objective");
    // primal feasibility
    std::vector<Rat> load(p.rows, Rat(0));
    Rat value(0);
    for (size_t j = 0; j < p.cols.size(); ++j) {
        if (s.x[j] < 0) return fail("negative primal variable");
        if (s.x[j] == 0) continue;
        for (const auto& [r, c] : p.cols[j]) load[r] += c * s.x[j];
        value += p.objectives[0][j] * s.x[j];
    }
    for (int i = 0; i < p.rows; ++i)
        if (load[i] > p.rhs[i]) return fail("primal constraint " + std::to_string(i) + " violated");
    if (value != s.level_values[0]) return fail("objective value mismatch");
    // dual feasibility
    Rat dual_value(0);
    for (int i = 0; i < p.rows; ++i) {
        if (s.dual[i] < 0) return fail("negative dual variable");
        dual_value += s.dual[i] * p.rhs[i];
    }
    for (size_t j = 0; j < p.cols.size(); ++j) {
        Rat slack(0);
        for (const auto& [r, c] : p.cols[j]) slack += s.dual[r] * c;
        if (slack < p.objectives[0][j]) return fail("dual constraint " + std::to_string(j) + " violated");
        if (s.x[j] > 0 && slack != p.objectives[0][j])
            return fail("complementary slackness fails at column " + std::to_string(j));
    }
    for (int i = 0; i < p.rows; ++i)
        if (s.dual[i] > 0 && load[i] != p.rhs[i])
            return fail("complementary slackness fails at row " + std::to_string(i));
    if (dual_value != value) return fail("duality gap");
    return true;
}

} // namespace arbortile
