#pragma once

// Complete elliptic integrals and the Jacobi cn function.
//
// Convention: everything here takes the MODULUS p, never the parameter m = p^2.
//   K(p) = int_0^{pi/2} dtheta / sqrt(1 - p^2 sin^2 theta)
//   E(p) = int_0^{pi/2} sqrt(1 - p^2 sin^2 theta) dtheta

namespace spherelab {

/// Elliptic modulus with 0 <= p < 1. Throws ModulusOutOfRange otherwise.
class Modulus {
 public:
  explicit Modulus(double p);
  double value() const { return p_; }
  /// Complementary modulus sqrt(1 - p^2).
  double complement() const;

 private:
  double p_;
};

/// Upper end of the moduli that produce closed elastica: 1/sqrt(2).
inline constexpr double kElasticaModulusBound = 0.70710678118654752440;

/// Arithmetic-geometric mean; relative error at rounding level.
double complete_k(Modulus p);
double complete_e(Modulus p);

/// cn(u, p) by the descending Landen (AGM) recursion. Period 4 K(p).
double jacobi_cn(double u, Modulus p);

/// (2 E(p) - K(p)) / sqrt(1 - 2 p^2); requires p < 1/sqrt(2) - 1e-9.
double f_of_p(Modulus p);

}  // namespace spherelab
