#include "stdiff/kernel/smith.hpp"

#include <utility>

namespace stdiff::kernel {

std::vector<mpz_class> SmithForm::diagonal() const {
  std::vector<mpz_class> out;
  for (std::size_t i = 0; i < d.dim(); ++i) out.push_back(d(i, i));
  return out;
}

namespace {

struct Work {
  IntMatrix a, p, q;
  std::size_t n;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < n; ++c) {
      std::swap(a(i, c), a(j, c));
      std::swap(p(i, c), p(j, c));
    }
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < n; ++r) {
      std::swap(a(r, i), a(r, j));
      std::swap(q(r, i), q(r, j));
    }
  }
  // row_i -= f * row_j
  void sub_row(std::size_t i, std::size_t j, const mpz_class& f) {
    if (f == 0) return;
    for (std::size_t c = 0; c < n; ++c) {
      a(i, c) -= f * a(j, c);
      p(i, c) -= f * p(j, c);
    }
  }
  // col_i -= f * col_j
  void sub_col(std::size_t i, std::size_t j, const mpz_class& f) {
    if (f == 0) return;
    for (std::size_t r = 0; r < n; ++r) {
      a(r, i) -= f * a(r, j);
      q(r, i) -= f * q(r, j);
    }
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < n; ++c) {
      a(i, c) = -a(i, c);
      p(i, c) = -p(i, c);
    }
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t n = a.dim();
  Work w{a, IntMatrix::identity(n), IntMatrix::identity(n), n};
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // least nonzero |entry| in the trailing block
      std::size_t pr = n, pc = n;
      for (std::size_t r = t; r < n; ++r)
        for (std::size_t c = t; c < n; ++c)
          if (w.a(r, c) != 0 && (pr == n || abs(w.a(r, c)) < abs(w.a(pr, pc)))) {
            pr = r;
            pc = c;
          }
      if (pr == n) break;  // block is zero
      w.swap_rows(t, pr);
      w.swap_cols(t, pc);
      bool clean = true;
      for (std::size_t r = t + 1; r < n; ++r) {
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), w.a(r, t).get_mpz_t(), w.a(t, t).get_mpz_t());
        w.sub_row(r, t, f);
        clean = clean && w.a(r, t) == 0;
      }
      for (std::size_t c = t + 1; c < n; ++c) {
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), w.a(t, c).get_mpz_t(), w.a(t, t).get_mpz_t());
        w.sub_col(c, t, f);
        clean = clean && w.a(t, c) == 0;
      }
      if (!clean) continue;
      // divisibility of the trailing block by the pivot
      std::size_t bad = n;
      for (std::size_t r = t + 1; r < n && bad == n; ++r)
        for (std::size_t c = t + 1; c < n; ++c)
          if (!mpz_divisible_p(w.a(r, c).get_mpz_t(), w.a(t, t).get_mpz_t())) {
            bad = r;
            break;
          }
      if (bad == n) break;
      w.sub_row(t, bad, -1);  // row_t += row_bad, then re-eliminate
    }
    if (w.a(t, t) < 0) w.negate_row(t);
  }
  return SmithForm{std::move(w.a), std::move(w.p), std::move(w.q)};
}

}  // namespace stdiff::kernel
