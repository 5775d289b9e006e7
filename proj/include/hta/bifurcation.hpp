#ifndef HTA_BIFURCATION_HPP
#define HTA_BIFURCATION_HPP

#include <optional>
#include <vector>

#include "hta/equilibria.hpp"
#include "hta/manifolds.hpp"

namespace hta {

/// The unique Q > 0 with delta(Q) = 0 (fold of the interior equilibria),
/// found by geometric bracket growth plus bisection; delta is strictly
/// decreasing in Q. Throws NumericalError if no sign change is found.
double find_saddle_node_Q(double A, double M);

/// Sotomayor transversality quantities at the fold, using the reduced field
/// F = ((u+A)(1-u)(u-M) - Qv, u - v) and the left/right null vectors
/// W = (-S(H+M+1+A)/(Q(H+M+1-A)), 1), U = (1,1):
///   W . F_Q         = S (H+M+1+A) / (2Q)
///   W . D2F(U,U)    = S (H+M+1+A)(3H+M+1-A) / (Q (H+M+1-A))
/// Both are positive for admissible parameters.
struct SotomayorQuantities {
    double w_dot_Fq;
    double w_dot_hessian;
};

SotomayorQuantities sotomayor_check(double A, double M, double Q_sn, double S);

/// Reduced field and helpers exposed for the finite-difference oracles.
Vec2 sotomayor_reduced_field(const NondimParams& p, const Vec2& s);
Vec2 sotomayor_left_null_vector(double A, double M, double Q_sn, double S, double H);

/// Bogdanov-Takens point: Q = Q***(A,M) and S = f(E), where the Jacobian at
/// (E,E) has a double zero eigenvalue and nilpotent normal form.
struct BTPoint {
    double Q;
    double S;
};

BTPoint find_bt_point(double A, double M);

/// Homoclinic value S**: bisection of the shooting probe (captured around P2
/// below, escaped above) to |bracket| < tol. The bracket must straddle the
/// transition. Heteroclinic value S*** analogously with the escape probe
/// ((M,0) below, boundary exit above).
double find_homoclinic_S(double A, double M, double Q, double s_lo, double s_hi,
                         const ManifoldConfig& cfg, double tol = 1e-4);
double find_heteroclinic_S(double A, double M, double Q, double s_lo, double s_hi,
                           const ManifoldConfig& cfg, double tol = 1e-4);

enum class RegionLabel { NoInterior, P2Repeller, CycleSeparatrix, WsToM, WsToBoundary, Undecided };

const char* to_string(RegionLabel label);

struct RegionDiagram {
    double A, M;
    double q_lo, q_hi, s_lo, s_hi;
    int nq, ns;
    std::vector<RegionLabel> labels; ///< row-major, labels[j*nq + i] at (Q_i, S_j)
    int undecided_count = 0;

    double q_at(int i) const;
    double s_at(int j) const;
    RegionLabel at(int i, int j) const { return labels[static_cast<std::size_t>(j) * nq + i]; }
};

/// Cell-centre classification of the (Q,S) plane: delta sign, then S vs S*,
/// then the connection topology. The cubic structure is computed once per
/// column (the interior equilibria do not depend on S).
RegionDiagram region_diagram(double A, double M, double q_lo, double q_hi, double s_lo, double s_hi,
                             int nq, int ns, const ManifoldConfig& cfg);

struct BifurcationSet {
    double A, M;
    double Q_sn;                          ///< saddle-node line Q***
    BTPoint bt;                           ///< (Q***, f(E))
    std::vector<std::pair<double, double>> hopf_curve; ///< (Q, S*(Q)) samples
    std::vector<std::pair<double, double>> homoclinic; ///< (Q, S**(Q)) samples
    std::vector<std::pair<double, double>> heteroclinic; ///< (Q, S***(Q)) samples
    std::optional<double> q_hopf_at_zero; ///< Q where S*(Q) = 0 (the Q* reading)
    double q_bt_abscissa;                 ///< = Q_sn (the Q** reading)
};

/// Samples the Hopf curve on a Q grid and, when requested, bisects the
/// homoclinic/heteroclinic values per sample (bracket discovered by scanning
/// S upward from S*).
BifurcationSet compute_bifurcation_set(double A, double M, const std::vector<double>& q_samples,
                                       const ManifoldConfig& cfg, bool with_global = true);

} // namespace hta

#endif
