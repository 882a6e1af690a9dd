#pragma once

#include <functional>
#include <utility>
#include <variant>

#include "cdscat/types.hpp"

/// Electromagnetic building blocks in vacuum.
///
/// Units: fields are expressed in units of P0/sqrt(eps0) (electric) and
/// P0/sqrt(mu0) (magnetic), so P0/sqrt(eps0) == 1 throughout the library.
/// Frequencies are carried as wavenumbers k = omega/c in inverse length units;
/// polarizabilities are volumes in the cube of the same length unit.
namespace cdscat {

// ---------------------------------------------------------------------------
// Mode indexing

enum class Block { A, B };

struct ModeLabel {
  Block block = Block::A;
  int l = 1;
  int m = 0;

  friend bool operator==(const ModeLabel&, const ModeLabel&) = default;
};

/// Canonical linear index of the truncated vector spherical basis.
///
/// The A (electric) block occupies [0, N/2), the B (magnetic) block [N/2, N).
/// Inside a block modes are sorted by l, then m from -l to l, so the index of
/// (l, m) within a block is l^2 - 1 + (m + l). N = 2 l_max (l_max + 2).
class ModeIndex {
 public:
  explicit ModeIndex(int l_max);

  int l_max() const noexcept { return l_max_; }
  int size() const noexcept { return 2 * half_; }
  int half() const noexcept { return half_; }

  int index(Block block, int l, int m) const;
  int index(const ModeLabel& label) const { return index(label.block, label.l, label.m); }
  ModeLabel label(int index) const;

  /// Position of (l, m) inside one block; l >= 1, |m| <= l.
  static int in_block(int l, int m) noexcept { return l * l - 1 + m + l; }
  /// Number of (l, m) pairs with 1 <= l <= l_max.
  static int block_size(int l_max) noexcept { return l_max * (l_max + 2); }

 private:
  int l_max_;
  int half_;
};

// ---------------------------------------------------------------------------
// Coefficient vectors

/// Free: regular at the origin, coefficients A^(j), B^(j).
/// Outgoing / Incoming: Riccati-Hankel modes with q = 1 / q = 2.
enum class FieldKind { Free, Outgoing, Incoming };

struct SphericalFieldCoeffs {
  SphericalFieldCoeffs(FieldKind kind, int l_max);
  SphericalFieldCoeffs(FieldKind kind, int l_max, VectorXc coeffs);

  FieldKind kind;
  int l_max;
  VectorXc coeffs;

  complex& a(int l, int m) { return coeffs[ModeIndex::in_block(l, m)]; }
  complex& b(int l, int m) { return coeffs[ModeIndex(l_max).half() + ModeIndex::in_block(l, m)]; }
  complex a(int l, int m) const { return coeffs[ModeIndex::in_block(l, m)]; }
  complex b(int l, int m) const { return coeffs[ModeIndex(l_max).half() + ModeIndex::in_block(l, m)]; }
};

// ---------------------------------------------------------------------------
// Frequencies and polarizabilities

/// A real frequency omega = c k, or an imaginary one omega = i c kappa.
class Frequency {
 public:
  static Frequency real(double k) { return Frequency(k, false); }
  static Frequency imaginary(double kappa) { return Frequency(kappa, true); }

  double wavenumber() const noexcept { return value_; }
  bool is_imaginary() const noexcept { return imaginary_; }

 private:
  Frequency(double value, bool imaginary) : value_(value), imaginary_(imaginary) {}
  double value_;
  bool imaginary_;
};

struct BarePolarizability {
  complex alpha0;
};

/// Sphere of radius R with a frequency-independent permittivity.
struct ClausiusMossotti {
  double radius;
  complex epsilon;
};

/// Sphere of radius R with a lossless plasma permittivity
/// eps = 1 - k_p^2/k^2 (real axis), eps = 1 + k_p^2/kappa^2 (imaginary axis),
/// k_p = omega_p / c.
struct PlasmaSphere {
  double radius;
  double plasma_wavenumber;
};

using PolarizabilityModel = std::variant<BarePolarizability, ClausiusMossotti, PlasmaSphere>;

/// Which polarizability enters the structure matrix at imaginary frequency.
enum class ImagFreqPolarizability { Bare, Dressed };

complex permittivity(const ClausiusMossotti& model, const Frequency& f);
complex permittivity(const PlasmaSphere& model, const Frequency& f);

/// 4 pi R^3 (eps - 1)/(eps + 2); throws SingularityError at eps = -2.
complex clausius_mossotti(double radius, complex epsilon);

/// alpha0 at the given (real or imaginary) frequency.
complex bare_polarizability(const PolarizabilityModel& model, const Frequency& f);

/// alpha0 / (1 - i k^3 alpha0 / 6 pi): adds radiation reaction.
complex dressed_polarizability(complex alpha0, double k);

/// Radiation reaction continued to k = i kappa: alpha0 / (1 - kappa^3 alpha0 / 6 pi).
complex dressed_polarizability_imag(complex alpha0, double kappa);

// ---------------------------------------------------------------------------
// Green tensor

/// Dimensionless vacuum Green tensor G0(target, source)/k.
CMat3 green_tensor(const Vec3& target, const Vec3& source, double k);
/// Same formula evaluated at a complex wavenumber.
CMat3 green_tensor(const Vec3& target, const Vec3& source, complex k);

/// G0(target, source, i c kappa)/kappa, real and symmetric:
/// e^{-y}/(4 pi y) [ (y^2+y+1)/y^2 Id - (y^2+3y+3)/y^2 u u ], y = kappa r.
/// The structure-matrix block at imaginary frequency is -kappa^3 alpha times this.
Mat3 green_tensor_imag_freq(const Vec3& target, const Vec3& source, double kappa);

// ---------------------------------------------------------------------------
// Vector spherical modes

enum class ModeKind { M, N };
/// Radial function: xi^(1), xi^(2) or psi.
enum class Radial { Outgoing, Incoming, Regular };

Radial radial_for(FieldKind kind) noexcept;

/// M or N mode at a Cartesian point, returned in Cartesian components.
/// Hankel kinds are singular at the origin (CoincidenceError).
CVec3 eval_vector_mode(ModeKind kind, Radial radial, int l, int m, const Vec3& point, double k);

enum class FieldComponent { E, H };

/// E = sum A N + i B M, H = sum B N - i A M over the truncated basis.
CVec3 eval_field(const SphericalFieldCoeffs& phi, const Vec3& point, double k, FieldComponent which);

/// Radial components (E.u_r, H.u_r) of a field at a point.
using RadialSampler = std::function<std::pair<complex, complex>(const Vec3&)>;

/// Projects the radial E and H components sampled on a sphere of radius a
/// onto spherical harmonics. Gauss-Legendre in cos(theta) with 2 l_max + 2
/// nodes, trapezoid in phi with 4 l_max + 4 nodes. kind must be Free or
/// Outgoing. Throws SingularityError naming the order l when the radial
/// function at ka is smaller than min_radial in magnitude.
SphericalFieldCoeffs decompose_field(const RadialSampler& sampler, FieldKind kind, double a, int l_max,
                                     double k, double min_radial = 1e-14);

/// x-polarized plane wave exp(ikz) in free-field coefficients.
SphericalFieldCoeffs plane_wave_coeffs(int l_max);

/// F: free-field coefficients -> E(0), 3 x N.
MatrixXc f_matrix(int l_max);
/// Q: dipole orientation -> outgoing coefficients of its radiation, N x 3.
MatrixXc q_matrix(int l_max);
/// Identity on the three (A, l = 1) coefficients, zero elsewhere.
MatrixXc identity_a1(int l_max);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace cdscat
