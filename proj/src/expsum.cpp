#include "horolab/expsum.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>

#include "horolab/modring.hpp"

namespace horolab::kloos {

ExpSum& ExpSum::operator+=(const ExpSum& o) {
    if (o.q_ != q_) throw PreconditionViolated("ExpSum modulus mismatch");
    for (i64 k = 0; k < q_; ++k) counts_[std::size_t(k)] = checked_add(counts_[std::size_t(k)], o.counts_[std::size_t(k)]);
    return *this;
}

ExpSum ExpSum::scaled(i64 factor) const {
    ExpSum r(q_);
    for (i64 k = 0; k < q_; ++k) r.counts_[std::size_t(k)] = checked_mul(counts_[std::size_t(k)], factor);
    return r;
}

ExpSum ExpSum::embedded(i64 m) const {
    if (m % q_ != 0) throw PreconditionViolated("embedding target must be a multiple of the modulus");
    ExpSum r(m);
    const i64 stride = m / q_;
    for (i64 k = 0; k < q_; ++k) r.counts_[std::size_t(k * stride)] = counts_[std::size_t(k)];
    return r;
}

ExpSum ExpSum::convolve(const ExpSum& a, const ExpSum& b) {
    if (modring::gcd_i64(a.q_, b.q_) != 1) throw PreconditionViolated("convolution needs coprime moduli");
    const i64 q = checked_mul(a.q_, b.q_);
    ExpSum r(q);
    for (i64 k = 0; k < a.q_; ++k) {
        if (a.counts_[std::size_t(k)] == 0) continue;
        for (i64 j = 0; j < b.q_; ++j) {
            if (b.counts_[std::size_t(j)] == 0) continue;
            i64 residue = (k * b.q_ + j * a.q_) % q;
            r.counts_[std::size_t(residue)] =
                checked_add(r.counts_[std::size_t(residue)], checked_mul(a.counts_[std::size_t(k)], b.counts_[std::size_t(j)]));
        }
    }
    return r;
}

std::complex<double> ExpSum::value() const {
    const long double tau = 6.283185307179586476925286766559L;
    long double re = 0, im = 0;
    for (i64 k = 0; k < q_; ++k) {
        i64 c = counts_[std::size_t(k)];
        if (c == 0) continue;
        long double ang = tau * (long double)(k) / (long double)(q_);
        re += (long double)(c)*std::cos(ang);
        im += (long double)(c)*std::sin(ang);
    }
    return {double(re), double(im)};
}

std::vector<i64> cyclotomic_polynomial(i64 q) {
    static std::map<i64, std::vector<i64>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);

    // Phi_q = (x^q - 1) / prod_{d | q, d < q} Phi_d, exact monic division
    std::function<std::vector<i64>(i64)> build = [&](i64 n) -> std::vector<i64> {
        auto found = cache.find(n);
        if (found != cache.end()) return found->second;
        std::vector<i64> num(std::size_t(n) + 1, 0);
        num[0] = -1;
        num[std::size_t(n)] = 1;
        for (i64 d : modring::divisors(n)) {
            if (d == n) continue;
            std::vector<i64> phi_d = build(d);
            std::vector<i64> quot(num.size() - phi_d.size() + 1, 0);
            for (std::size_t k = quot.size(); k-- > 0;) {
                i64 lead = num[k + phi_d.size() - 1];
                quot[k] = lead;
                if (lead == 0) continue;
                for (std::size_t j = 0; j < phi_d.size(); ++j)
                    num[k + j] = checked_sub(num[k + j], checked_mul(lead, phi_d[j]));
            }
            num = quot;
        }
        cache[n] = num;
        return num;
    };
    return build(q);
}

std::vector<i64> ExpSum::canonical() const {
    std::vector<i64> poly = counts_;
    const std::vector<i64> phi = cyclotomic_polynomial(q_);
    const std::size_t deg = phi.size() - 1;  // = euler_phi(q)
    for (std::size_t k = poly.size(); k-- > deg;) {
        i64 lead = poly[k];
        if (lead == 0) continue;
        for (std::size_t j = 0; j < phi.size(); ++j)
            poly[k - deg + j] = checked_sub(poly[k - deg + j], checked_mul(lead, phi[j]));
    }
    poly.resize(deg);
    return poly;
}

bool ExpSum::equal_exact(const ExpSum& a, const ExpSum& b) {
    if (a.q_ == b.q_) return a.canonical() == b.canonical();
    i64 l = a.q_ / modring::gcd_i64(a.q_, b.q_) * b.q_;
    return a.embedded(l).canonical() == b.embedded(l).canonical();
}

bool ExpSum::is_zero_exact() const {
    for (i64 c : canonical())
        if (c != 0) return false;
    return true;
}

}  // namespace horolab::kloos
