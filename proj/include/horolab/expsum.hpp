#pragma once

#include <complex>
#include <vector>

#include "horolab/checked.hpp"
#include "horolab/errors.hpp"

namespace horolab::kloos {

// Exact accumulator for sums of q-th roots of unity: counts[k] is the integer
// coefficient of e^{2 pi i k / q}.  All arithmetic on these histograms is
// exact; the only lossy step is the final complex evaluation.
class ExpSum {
  public:
    ExpSum() : ExpSum(1) {}
    explicit ExpSum(i64 q) : q_(q), counts_(std::size_t(q), 0) {
        if (q < 1) throw PreconditionViolated("ExpSum modulus must be >= 1");
    }

    i64 q() const { return q_; }
    const std::vector<i64>& counts() const { return counts_; }

    void add(i64 residue, i64 coeff = 1) {
        i64 r = residue % q_;
        if (r < 0) r += q_;
        counts_[std::size_t(r)] = checked_add(counts_[std::size_t(r)], coeff);
    }

    ExpSum& operator+=(const ExpSum& o);
    ExpSum scaled(i64 factor) const;

    // reinterpret mod a multiple of q: e_q(k) = e_m(k * m/q)
    ExpSum embedded(i64 m) const;

    // product of two sums with coprime moduli, exact as a histogram mod q1*q2
    static ExpSum convolve(const ExpSum& a, const ExpSum& b);

    std::complex<double> value() const;

    // canonical residue mod the q-th cyclotomic polynomial; two histograms
    // represent the same algebraic number iff their canonical forms agree
    std::vector<i64> canonical() const;
    static bool equal_exact(const ExpSum& a, const ExpSum& b);
    bool is_zero_exact() const;

  private:
    i64 q_;
    std::vector<i64> counts_;
};

// coefficients of the q-th cyclotomic polynomial, ascending degree
std::vector<i64> cyclotomic_polynomial(i64 q);

}  // namespace horolab::kloos
