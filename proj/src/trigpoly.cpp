#include "skewloop/trigpoly.hpp"

#include <algorithm>
#include <complex>
#include <limits>
#include <numbers>

namespace skewloop {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TrigPoly::TrigPoly(double a0, std::vector<double> cos_coeffs,
                   std::vector<double> sin_coeffs)
    : a0_(a0), a_(std::move(cos_coeffs)), b_(std::move(sin_coeffs)) {
  if (a_.size() < b_.size()) a_.resize(b_.size(), 0.0);
  if (b_.size() < a_.size()) b_.resize(a_.size(), 0.0);
}

TrigPoly TrigPoly::harmonic_cos(int k, double amp) {
  if (k == 0) return TrigPoly(amp);
  std::vector<double> a(k, 0.0), b(k, 0.0);
  a[k - 1] = amp;
  return TrigPoly(0.0, std::move(a), std::move(b));
}

TrigPoly TrigPoly::harmonic_sin(int k, double amp) {
  if (k == 0) return TrigPoly(0.0);
  std::vector<double> a(k, 0.0), b(k, 0.0);
  b[k - 1] = amp;
  return TrigPoly(0.0, std::move(a), std::move(b));
}

double TrigPoly::eval(double t) const {
  // Reduction with the double-rounded 2pi constant keeps periodicity exact:
  // remainder(t + 2pi, 2pi) == remainder(t, 2pi) whenever t + 2pi is
  // representable, since std::remainder is exactly rounded.
  const double r = std::remainder(t, kTwoPi);
  const double c1 = std::cos(r), s1 = std::sin(r);
  double ck = 1.0, sk = 0.0;  // cos(k r), sin(k r)
  double sum = a0_;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    const double cn = ck * c1 - sk * s1;
    const double sn = sk * c1 + ck * s1;
    ck = cn;
    sk = sn;
    sum += a_[i] * ck + b_[i] * sk;
  }
  return sum;
}

void TrigPoly::eval_jets(double t, double out[4]) const {
  const double r = std::remainder(t, kTwoPi);
  const double c1 = std::cos(r), s1 = std::sin(r);
  double ck = 1.0, sk = 0.0;
  double f = a0_, f1 = 0, f2 = 0, f3 = 0;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    const double cn = ck * c1 - sk * s1;
    const double sn = sk * c1 + ck * s1;
    ck = cn;
    sk = sn;
    const double k = static_cast<double>(i + 1);
    const double ac = a_[i] * ck, bs = b_[i] * sk;
    const double as = a_[i] * sk, bc = b_[i] * ck;
    f += ac + bs;
    f1 += k * (bc - as);
    f2 -= k * k * (ac + bs);
    f3 += k * k * k * (as - bc);
  }
  out[0] = f;
  out[1] = f1;
  out[2] = f2;
  out[3] = f3;
}

TrigPoly TrigPoly::derivative() const {
  std::vector<double> a(a_.size()), b(b_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    a[i] = k * b_[i];
    b[i] = -k * a_[i];
  }
  return TrigPoly(0.0, std::move(a), std::move(b));
}

TrigPoly TrigPoly::antiderivative_zero_mean(double tol) const {
  if (std::abs(a0_) > tol)
    throw NonzeroMean("antiderivative on S^1 requires zero mean, a0 = " +
                      std::to_string(a0_));
  std::vector<double> a(a_.size()), b(b_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    a[i] = -b_[i] / k;
    b[i] = a_[i] / k;
  }
  return TrigPoly(0.0, std::move(a), std::move(b));
}

TrigPoly TrigPoly::half_shift() const {
  std::vector<double> a(a_), b(b_);
  for (std::size_t i = 0; i < a.size(); i += 2) {  // odd harmonics k = i+1
    a[i] = -a[i];
    b[i] = -b[i];
  }
  return TrigPoly(a0_, std::move(a), std::move(b));
}

std::pair<TrigPoly, TrigPoly> TrigPoly::parity_split() const {
  std::vector<double> ae(a_.size(), 0.0), be(b_.size(), 0.0);
  std::vector<double> ao(a_.size(), 0.0), bo(b_.size(), 0.0);
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if ((i + 1) % 2 == 0) {
      ae[i] = a_[i];
      be[i] = b_[i];
    } else {
      ao[i] = a_[i];
      bo[i] = b_[i];
    }
  }
  return {TrigPoly(a0_, std::move(ae), std::move(be)).trimmed(),
          TrigPoly(0.0, std::move(ao), std::move(bo)).trimmed()};
}

bool TrigPoly::is_zero(double tol) const {
  if (std::abs(a0_) > tol) return false;
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (std::abs(a_[i]) > tol || std::abs(b_[i]) > tol) return false;
  return true;
}

double TrigPoly::max_coeff_magnitude() const {
  double m = std::abs(a0_);
  for (std::size_t i = 0; i < a_.size(); ++i)
    m = std::max({m, std::abs(a_[i]), std::abs(b_[i])});
  return m;
}

double TrigPoly::lipschitz_bound() const {
  double s = 0;
  for (std::size_t i = 0; i < a_.size(); ++i)
    s += static_cast<double>(i + 1) * (std::abs(a_[i]) + std::abs(b_[i]));
  return s;
}

double TrigPoly::sup_norm_bound() const {
  double s = std::abs(a0_);
  for (std::size_t i = 0; i < a_.size(); ++i)
    s += std::abs(a_[i]) + std::abs(b_[i]);
  return s;
}

BoundBox TrigPoly::sup_bound(double tol) const {
  const double lip = lipschitz_bound();
  if (lip == 0.0) return {a0_, a0_, true};
  // Second-derivative coefficient bound; the maximizer is a critical point,
  // so f(t*) - f(nearest grid node) <= C2 d^2 / 2 as well as <= Lip d.
  double c2 = 0;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    c2 += k * k * (std::abs(a_[i]) + std::abs(b_[i]));
  }
  int m = std::max(64, 8 * degree());
  constexpr int kMaxM = 1 << 22;
  BoundBox box;
  for (;;) {
    double gmax = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i)
      gmax = std::max(gmax, eval(kTwoPi * i / m));
    const double d = std::numbers::pi / m;
    const double pad = std::min(lip * d, 0.5 * c2 * d * d);
    box = {gmax, gmax + pad, true};
    if (pad <= tol || m >= kMaxM) break;
    m *= 2;
  }
  return box;  // iteration cap: widest valid enclosure, still certified
}

BoundBox TrigPoly::inf_bound(double tol) const {
  const BoundBox s = (-*this).sup_bound(tol);
  return {-s.upper, -s.lower, true};
}

TrigPoly TrigPoly::operator+(const TrigPoly& g) const {
  const std::size_t n = std::max(a_.size(), g.a_.size());
  std::vector<double> a(n, 0.0), b(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = (i < a_.size() ? a_[i] : 0.0) + (i < g.a_.size() ? g.a_[i] : 0.0);
    b[i] = (i < b_.size() ? b_[i] : 0.0) + (i < g.b_.size() ? g.b_[i] : 0.0);
  }
  return TrigPoly(a0_ + g.a0_, std::move(a), std::move(b));
}

TrigPoly TrigPoly::operator-(const TrigPoly& g) const { return *this + g * -1.0; }

TrigPoly TrigPoly::operator*(double s) const {
  std::vector<double> a(a_), b(b_);
  for (auto& x : a) x *= s;
  for (auto& x : b) x *= s;
  return TrigPoly(a0_ * s, std::move(a), std::move(b));
}

TrigPoly TrigPoly::operator*(const TrigPoly& g) const {
  // Exact product via convolution of complex Fourier coefficients
  // c_k = (a_k - i b_k)/2, c_{-k} = conj(c_k).
  const int n1 = degree(), n2 = g.degree();
  const int n = n1 + n2;
  auto cf = [](const TrigPoly& f, int k) -> std::complex<double> {
    if (k == 0) return {f.a0(), 0.0};
    const int m = std::abs(k);
    std::complex<double> c(0.5 * f.a(m), -0.5 * f.b(m));
    return k > 0 ? c : std::conj(c);
  };
  std::vector<std::complex<double>> out(n + 1);
  for (int k = 0; k <= n; ++k) {
    std::complex<double> s(0.0, 0.0);
    for (int j = -n1; j <= n1; ++j) {
      const int l = k - j;
      if (l < -n2 || l > n2) continue;
      s += cf(*this, j) * cf(g, l);
    }
    out[k] = s;
  }
  std::vector<double> a(n, 0.0), b(n, 0.0);
  for (int k = 1; k <= n; ++k) {
    a[k - 1] = 2.0 * out[k].real();
    b[k - 1] = -2.0 * out[k].imag();
  }
  return TrigPoly(out[0].real(), std::move(a), std::move(b)).trimmed();
}

TrigPoly TrigPoly::trimmed() const {
  std::size_t n = a_.size();
  while (n > 0 && a_[n - 1] == 0.0 && b_[n - 1] == 0.0) --n;
  if (n == a_.size()) return *this;
  return TrigPoly(a0_, std::vector<double>(a_.begin(), a_.begin() + n),
                  std::vector<double>(b_.begin(), b_.begin() + n));
}

BoundBox inf_bound_relative(const TrigPoly& f, double tol, double rel) {
  const int m = std::max(1024, 8 * f.degree());
  double coarse = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i)
    coarse = std::min(coarse, f.eval(kTwoPi * i / m));
  const double eff = coarse > 0 ? std::max(tol, rel * coarse) : tol;
  return f.inf_bound(eff);
}

}  // namespace skewloop
