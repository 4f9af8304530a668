#include "hadwiger/lp.hpp"

#include "hadwiger/error.hpp"

namespace hadwiger {

namespace {

// Dense tableau for max c.x, A x <= b, x >= 0 with b >= 0; the slack basis
// is feasible from the start.
class Tableau {
 public:
  Tableau(std::vector<std::vector<mpq_class>> a, std::vector<mpq_class> b, const std::vector<mpq_class>& c)
      : m_(a.size()), k_(c.size()), width_(k_ + m_ + 1) {
    t_.assign((m_ + 1) * width_, mpq_class(0));
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < k_; ++j) at(i, j) = a[i][j];
      at(i, k_ + i) = 1;
      at(i, width_ - 1) = b[i];
      basis_[i] = k_ + i;
    }
    for (std::size_t j = 0; j < k_; ++j) at(m_, j) = -c[j];
  }

  std::size_t solve() {
    std::size_t pivots = 0;
    while (true) {
      // Bland: lowest-index improving column, then lowest basic index
      // among tied ratios.
      std::size_t enter = width_;
      for (std::size_t j = 0; j + 1 < width_; ++j) {
        if (sgn(at(m_, j)) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == width_) return pivots;
      std::size_t leave = m_;
      mpq_class best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(at(i, enter)) <= 0) continue;
        mpq_class ratio = at(i, width_ - 1) / at(i, enter);
        const int c = leave == m_ ? -1 : cmp(ratio, best);
        if (c < 0 || (c == 0 && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == m_) throw Error("packing LP unbounded; a column has no positive entry");
      pivot(leave, enter);
      ++pivots;
    }
  }

  mpq_class objective() const { return at(m_, width_ - 1); }

  std::vector<mpq_class> primal() const {
    std::vector<mpq_class> x(k_, mpq_class(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < k_) x[basis_[i]] = at(i, width_ - 1);
    }
    return x;
  }

  std::vector<mpq_class> dual() const {
    std::vector<mpq_class> y(m_);
    for (std::size_t i = 0; i < m_; ++i) y[i] = at(m_, k_ + i);
    return y;
  }

 private:
  mpq_class& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
  const mpq_class& at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }

  void pivot(std::size_t r, std::size_t s) {
    const mpq_class inv = 1 / at(r, s);
    for (std::size_t j = 0; j < width_; ++j) {
      if (sgn(at(r, j)) != 0) at(r, j) *= inv;
    }
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r || sgn(at(i, s)) == 0) continue;
      const mpq_class f = at(i, s);
      for (std::size_t j = 0; j < width_; ++j) {
        if (sgn(at(r, j)) != 0) at(i, j) -= f * at(r, j);
      }
    }
    basis_[r] = s;
  }

  std::size_t m_;
  std::size_t k_;
  std::size_t width_;
  std::vector<mpq_class> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpSolution solve_packing_lp(const PackingLp& lp) {
  const std::size_t rows = lp.a.size();
  const std::size_t cols = lp.c.size();
  if (lp.b.size() != rows) throw Error("packing LP: b has the wrong length");
  for (const auto& row : lp.a) {
    if (row.size() != cols) throw Error("packing LP: ragged constraint matrix");
  }
  std::vector<mpq_class> lo(cols, mpq_class(0));
  if (!lp.lo.empty()) {
    for (std::size_t j = 0; j < cols; ++j) lo[j] = lp.lo[j].raw();
  }

  LpSolution out;
  // shift x = lo + x'
  std::vector<std::vector<mpq_class>> a;
  std::vector<mpq_class> b;
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<mpq_class> row(cols);
    mpq_class rhs = lp.b[i].raw();
    for (std::size_t j = 0; j < cols; ++j) {
      row[j] = lp.a[i][j].raw();
      if (sgn(row[j]) < 0) throw Error("packing LP: negative coefficient");
      rhs -= row[j] * lo[j];
    }
    if (sgn(rhs) < 0) {
      out.feasible = false;
      return out;
    }
    a.push_back(std::move(row));
    b.push_back(std::move(rhs));
  }
  if (!lp.hi.empty()) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (!lp.hi[j]) continue;
      mpq_class rhs = lp.hi[j]->raw() - lo[j];
      if (sgn(rhs) < 0) {
        out.feasible = false;
        return out;
      }
      std::vector<mpq_class> row(cols, mpq_class(0));
      row[j] = 1;
      a.push_back(std::move(row));
      b.push_back(std::move(rhs));
    }
  }
  std::vector<mpq_class> c(cols);
  mpq_class base = 0;
  for (std::size_t j = 0; j < cols; ++j) {
    c[j] = lp.c[j].raw();
    base += c[j] * lo[j];
  }

  Tableau t(std::move(a), std::move(b), c);
  out.pivots = t.solve();
  out.opt = Rational(t.objective() + base);
  const auto x = t.primal();
  out.x.reserve(cols);
  for (std::size_t j = 0; j < cols; ++j) out.x.emplace_back(x[j] + lo[j]);
  for (const auto& y : t.dual()) out.dual.emplace_back(y);
  return out;
}

}  // namespace hadwiger
