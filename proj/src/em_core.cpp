#include "cdscat/em_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cdscat/errors.hpp"
#include "cdscat/specfun.hpp"

namespace cdscat {

// ---------------------------------------------------------------------------
// ModeIndex

ModeIndex::ModeIndex(int l_max) : l_max_(l_max), half_(block_size(l_max)) {
  if (l_max < 1) throw DomainError("ModeIndex: l_max must be >= 1");
}

int ModeIndex::index(Block block, int l, int m) const {
  if (l < 1 || l > l_max_ || std::abs(m) > l) {
    throw DomainError("ModeIndex: label out of range (l=" + std::to_string(l) + ", m=" + std::to_string(m) + ")");
  }
  return (block == Block::A ? 0 : half_) + in_block(l, m);
}

ModeLabel ModeIndex::label(int index) const {
  if (index < 0 || index >= size()) throw DomainError("ModeIndex: index out of range");
  const Block block = index < half_ ? Block::A : Block::B;
  const int local = index % half_;
  const int l = static_cast<int>(std::sqrt(static_cast<double>(local + 1)));
  // local + 1 lies in [l^2, (l+1)^2); guard the floating sqrt.
  int ll = l;
  while (ll * ll > local + 1) --ll;
  while ((ll + 1) * (ll + 1) <= local + 1) ++ll;
  return {block, ll, local - (ll * ll - 1) - ll};
}

// ---------------------------------------------------------------------------
// SphericalFieldCoeffs

SphericalFieldCoeffs::SphericalFieldCoeffs(FieldKind kind_, int l_max_)
    : kind(kind_), l_max(l_max_), coeffs(VectorXc::Zero(ModeIndex(l_max_).size())) {}

SphericalFieldCoeffs::SphericalFieldCoeffs(FieldKind kind_, int l_max_, VectorXc coeffs_)
    : kind(kind_), l_max(l_max_), coeffs(std::move(coeffs_)) {
  if (coeffs.size() != ModeIndex(l_max).size()) {
    throw DomainError("SphericalFieldCoeffs: length does not match l_max");
  }
}

// ---------------------------------------------------------------------------
// Polarizabilities

complex permittivity(const ClausiusMossotti& model, const Frequency&) { return model.epsilon; }

complex permittivity(const PlasmaSphere& model, const Frequency& f) {
  const double kp2 = model.plasma_wavenumber * model.plasma_wavenumber;
  const double k = f.wavenumber();
  if (k == 0.0) throw SingularityError("plasma permittivity diverges at zero frequency");
  return f.is_imaginary() ? complex(1.0 + kp2 / (k * k)) : complex(1.0 - kp2 / (k * k));
}

complex clausius_mossotti(double radius, complex epsilon) {
  if (!(radius > 0.0)) throw DomainError("Clausius-Mossotti sphere needs a positive radius");
  if (epsilon + 2.0 == complex(0.0)) throw SingularityError("Clausius-Mossotti pole at eps = -2");
  return 4.0 * pi * radius * radius * radius * (epsilon - 1.0) / (epsilon + 2.0);
}

complex bare_polarizability(const PolarizabilityModel& model, const Frequency& f) {
  struct Visitor {
    const Frequency& f;
    complex operator()(const BarePolarizability& m) const { return m.alpha0; }
    complex operator()(const ClausiusMossotti& m) const { return clausius_mossotti(m.radius, permittivity(m, f)); }
    complex operator()(const PlasmaSphere& m) const { return clausius_mossotti(m.radius, permittivity(m, f)); }
  };
  return std::visit(Visitor{f}, model);
}

complex dressed_polarizability(complex alpha0, double k) {
  const complex denom = 1.0 - I * k * k * k * alpha0 / (6.0 * pi);
  if (std::abs(denom) == 0.0) throw SingularityError("radiation-reaction denominator vanishes");
  return alpha0 / denom;
}

complex dressed_polarizability_imag(complex alpha0, double kappa) {
  const complex denom = 1.0 - kappa * kappa * kappa * alpha0 / (6.0 * pi);
  if (std::abs(denom) == 0.0) throw SingularityError("radiation-reaction denominator vanishes");
  return alpha0 / denom;
}

// ---------------------------------------------------------------------------
// Green tensor

namespace {

template <class K>
CMat3 green_impl(const Vec3& target, const Vec3& source, K k) {
  const Vec3 d = target - source;
  const double r = d.norm();
  if (r == 0.0) throw CoincidenceError("Green tensor evaluated at coincident points");
  const Vec3 u = d / r;
  const complex kr = k * r;
  const complex kr2 = kr * kr;
  const complex pref = std::exp(I * kr) / (4.0 * pi * kr);
  const complex f1 = (kr2 + I * kr - 1.0) / kr2;
  const complex f2 = (kr2 + 3.0 * I * kr - 3.0) / kr2;
  CMat3 g = f1 * CMat3::Identity() - f2 * (u * u.transpose()).cast<complex>();
  return pref * g;
}

}  // namespace

CMat3 green_tensor(const Vec3& target, const Vec3& source, double k) {
  if (!(k > 0.0)) throw DomainError("green_tensor: wavenumber must be positive");
  return green_impl(target, source, complex(k));
}

CMat3 green_tensor(const Vec3& target, const Vec3& source, complex k) {
  return green_impl(target, source, k);
}

Mat3 green_tensor_imag_freq(const Vec3& target, const Vec3& source, double kappa) {
  if (!(kappa > 0.0)) throw DomainError("green_tensor_imag_freq: kappa must be positive");
  const Vec3 d = target - source;
  const double r = d.norm();
  if (r == 0.0) throw CoincidenceError("Green tensor evaluated at coincident points");
  const Vec3 u = d / r;
  const double y = kappa * r;
  const double y2 = y * y;
  const double pref = std::exp(-y) / (4.0 * pi * y);
  const double f1 = (y2 + y + 1.0) / y2;
  const double f2 = (y2 + 3.0 * y + 3.0) / y2;
  return pref * (f1 * Mat3::Identity() - f2 * (u * u.transpose()));
}

// ---------------------------------------------------------------------------
// Vector spherical modes

Radial radial_for(FieldKind kind) noexcept {
  switch (kind) {
    case FieldKind::Free: return Radial::Regular;
    case FieldKind::Outgoing: return Radial::Outgoing;
    case FieldKind::Incoming: return Radial::Incoming;
  }
  return Radial::Regular;
}

namespace {

/// Radial factors Z/x, Z/x^2 and Z'/x for l = 0..l_max at x = k r.
struct RadialFactors {
  std::vector<complex> z_over_x, z_over_x2, dz_over_x;
};

RadialFactors radial_factors(Radial radial, int l_max, double x) {
  RadialFactors f;
  const std::size_t n = static_cast<std::size_t>(l_max) + 1;
  f.z_over_x.assign(n, 0.0);
  f.z_over_x2.assign(n, 0.0);
  f.dz_over_x.assign(n, 0.0);
  if (radial == Radial::Regular) {
    if (x == 0.0) {
      // Only l = 1 survives at the origin: psi_1 ~ x^2/3, psi_1' ~ 2x/3.
      if (l_max >= 1) {
        f.z_over_x2[1] = 1.0 / 3.0;
        f.dz_over_x[1] = 2.0 / 3.0;
      }
      return f;
    }
    const auto t = specfun::riccati_bessel_table(l_max, x);
    for (std::size_t l = 0; l < n; ++l) {
      f.z_over_x[l] = t.value[l] / x;
      f.z_over_x2[l] = t.value[l] / (x * x);
      f.dz_over_x[l] = t.derivative[l] / x;
    }
    return f;
  }
  if (x == 0.0) throw CoincidenceError("Riccati-Hankel modes are singular at the origin");
  const auto t = specfun::riccati_hankel_table(radial == Radial::Outgoing ? 1 : 2, l_max, x);
  for (std::size_t l = 0; l < n; ++l) {
    f.z_over_x[l] = t.value[l] / x;
    f.z_over_x2[l] = t.value[l] / (x * x);
    f.dz_over_x[l] = t.derivative[l] / x;
  }
  return f;
}

struct SphericalFrame {
  double theta, phi;
  Vec3 er, etheta, ephi;
};

SphericalFrame frame_of(const Vec3& p) {
  const double r = p.norm();
  SphericalFrame s{};
  s.theta = (r == 0.0) ? 0.0 : std::acos(std::clamp(p.z() / r, -1.0, 1.0));
  s.phi = std::atan2(p.y(), p.x());
  const double ct = std::cos(s.theta), st = std::sin(s.theta);
  const double cp = std::cos(s.phi), sp = std::sin(s.phi);
  s.er = Vec3(st * cp, st * sp, ct);
  s.etheta = Vec3(ct * cp, ct * sp, -st);
  s.ephi = Vec3(-sp, cp, 0.0);
  return s;
}

// Spherical components (r, theta, phi) of M and N for one (l, m).
void mode_components(const specfun::AngularTable& ang, const RadialFactors& rad, int l, int m, double phi,
                     complex m_sph[3], complex n_sph[3]) {
  const complex e = std::exp(I * (static_cast<double>(m) * phi));
  const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
  const complex y = ang.value(l, m) * e;
  const complex dy = ang.dtheta(l, m) * e;
  const complex my = ang.m_over_sin(l, m) * e;
  m_sph[0] = 0.0;
  m_sph[1] = -norm * rad.z_over_x[l] * my;
  m_sph[2] = -I * norm * rad.z_over_x[l] * dy;
  n_sph[0] = I * norm * static_cast<double>(l * (l + 1)) * rad.z_over_x2[l] * y;
  n_sph[1] = I * norm * rad.dz_over_x[l] * dy;
  n_sph[2] = -norm * rad.dz_over_x[l] * my;
}

CVec3 to_cartesian(const SphericalFrame& s, const complex c[3]) {
  return s.er.cast<complex>() * c[0] + s.etheta.cast<complex>() * c[1] + s.ephi.cast<complex>() * c[2];
}

}  // namespace

CVec3 eval_vector_mode(ModeKind kind, Radial radial, int l, int m, const Vec3& point, double k) {
  if (l < 1 || std::abs(m) > l) throw DomainError("eval_vector_mode: invalid (l, m)");
  const SphericalFrame s = frame_of(point);
  const specfun::AngularTable ang(l, s.theta);
  const RadialFactors rad = radial_factors(radial, l, k * point.norm());
  complex ms[3], ns[3];
  mode_components(ang, rad, l, m, s.phi, ms, ns);
  return to_cartesian(s, kind == ModeKind::M ? ms : ns);
}

CVec3 eval_field(const SphericalFieldCoeffs& phi, const Vec3& point, double k, FieldComponent which) {
  const SphericalFrame s = frame_of(point);
  const specfun::AngularTable ang(phi.l_max, s.theta);
  const RadialFactors rad = radial_factors(radial_for(phi.kind), phi.l_max, k * point.norm());
  complex total[3] = {0.0, 0.0, 0.0};
  complex ms[3], ns[3];
  for (int l = 1; l <= phi.l_max; ++l) {
    for (int m = -l; m <= l; ++m) {
      const complex a = phi.a(l, m);
      const complex b = phi.b(l, m);
      if (a == 0.0 && b == 0.0) continue;
      mode_components(ang, rad, l, m, s.phi, ms, ns);
      for (int c = 0; c < 3; ++c) {
        total[c] += (which == FieldComponent::E) ? a * ns[c] + I * b * ms[c] : b * ns[c] - I * a * ms[c];
      }
    }
  }
  return to_cartesian(s, total);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

SphericalFieldCoeffs decompose_field(const RadialSampler& sampler, FieldKind kind, double a, int l_max, double k,
                                     double min_radial) {
  if (kind == FieldKind::Incoming) throw DomainError("decompose_field: only free or outgoing fields are supported");
  if (!(a > 0.0)) throw DomainError("decompose_field: radius must be positive");
  const ModeIndex idx(l_max);
  const double ka = k * a;

  std::vector<complex> radial(static_cast<std::size_t>(l_max) + 1);
  if (kind == FieldKind::Free) {
    const auto t = specfun::riccati_bessel_table(l_max, ka);
    for (int l = 0; l <= l_max; ++l) radial[l] = t.value[l];
  } else {
    const auto t = specfun::riccati_hankel_table(1, l_max, ka);
    for (int l = 0; l <= l_max; ++l) radial[l] = t.value[l];
  }
  for (int l = 1; l <= l_max; ++l) {
    if (std::abs(radial[l]) < min_radial) {
      throw SingularityError("decompose_field: radial function of order l=" + std::to_string(l) +
                             " is too small at ka=" + std::to_string(ka));
    }
  }

  const int n_theta = 2 * l_max + 2;
  const int n_phi = 4 * l_max + 4;
  std::vector<double> xs, ws;
  gauss_legendre(n_theta, xs, ws);

  VectorXc e_proj = VectorXc::Zero(idx.half());
  VectorXc h_proj = VectorXc::Zero(idx.half());
  const double dphi = 2.0 * pi / n_phi;
  for (int it = 0; it < n_theta; ++it) {
    const double theta = std::acos(xs[it]);
    const specfun::AngularTable ang(l_max, theta);
    const double st = std::sin(theta);
    for (int ip = 0; ip < n_phi; ++ip) {
      const double phi = ip * dphi;
      const Vec3 p(a * st * std::cos(phi), a * st * std::sin(phi), a * xs[it]);
      const auto [er, hr] = sampler(p);
      const double w = ws[it] * dphi;
      for (int l = 1; l <= l_max; ++l) {
        for (int m = -l; m <= l; ++m) {
          const complex yconj = ang.value(l, m) * std::exp(-I * (static_cast<double>(m) * phi));
          e_proj[ModeIndex::in_block(l, m)] += w * er * yconj;
          h_proj[ModeIndex::in_block(l, m)] += w * hr * yconj;
        }
      }
    }
  }

  SphericalFieldCoeffs out(kind, l_max);
  for (int l = 1; l <= l_max; ++l) {
    const complex factor = ka * ka / (I * std::sqrt(static_cast<double>(l) * (l + 1)) * radial[l]);
    for (int m = -l; m <= l; ++m) {
      out.a(l, m) = factor * e_proj[ModeIndex::in_block(l, m)];
      out.b(l, m) = factor * h_proj[ModeIndex::in_block(l, m)];
    }
  }
  return out;
}

SphericalFieldCoeffs plane_wave_coeffs(int l_max) {
  SphericalFieldCoeffs phi(FieldKind::Free, l_max);
  complex il = I;  // i^l
  for (int l = 1; l <= l_max; ++l) {
    const double amp = std::sqrt(pi * (2.0 * l + 1.0));
    phi.a(l, 1) = il * amp;
    phi.a(l, -1) = -il * amp;
    phi.b(l, 1) = il / I * amp;
    phi.b(l, -1) = il / I * amp;
    il *= I;
  }
  return phi;
}

MatrixXc f_matrix(int l_max) {
  const ModeIndex idx(l_max);
  MatrixXc f = MatrixXc::Zero(3, idx.size());
  const double s = 1.0 / std::sqrt(12.0 * pi);
  f(0, 0) = I * s;
  f(1, 0) = s;
  f(2, 1) = std::sqrt(2.0) * I * s;
  f(0, 2) = -I * s;
  f(1, 2) = s;
  return f;
}

MatrixXc q_matrix(int l_max) {
  const ModeIndex idx(l_max);
  MatrixXc q = MatrixXc::Zero(idx.size(), 3);
  const double s = 1.0 / std::sqrt(12.0 * pi);
  q(0, 0) = s;
  q(0, 1) = I * s;
  q(1, 2) = std::sqrt(2.0) * s;
  q(2, 0) = -s;
  q(2, 1) = I * s;
  return q;
}

MatrixXc identity_a1(int l_max) {
  const ModeIndex idx(l_max);
  MatrixXc id = MatrixXc::Zero(idx.size(), idx.size());
  for (int i = 0; i < 3; ++i) id(i, i) = 1.0;
  return id;
}

}  // namespace cdscat
