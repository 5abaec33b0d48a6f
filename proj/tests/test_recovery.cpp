#include "qecwb/qecwb.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qecwb;

namespace {

const std::vector<StateVector>& corner_basis()
{
  static const std::vector<StateVector> basis{basis_state("0000"), basis_state("0011"), basis_state("1100"),
                                              basis_state("1111")};
  return basis;
}

// expected polar unitary on span{0000, 0011, 1100, 1111}
Matrix no_jump_u(double g)
{
  const double c2 = (1.0 - g) * (1.0 - g);
  const double d = std::sqrt(2.0) * std::sqrt(1.0 + c2 * c2);
  Matrix u = Matrix::Identity(4, 4);
  u(0, 0) = u(3, 3) = (1.0 + c2) / d;
  u(0, 3) = (1.0 - c2) / d;
  u(3, 0) = -(1.0 - c2) / d;
  return u;
}

double no_jump_pi_corner(double g)
{
  return 0.5 * g + 0.5 * std::sqrt(0.5 * std::pow(g - 1.0, 4) + 0.5) - 0.5;
}

Matrix corner_ones()
{
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 1.0;
  return m;
}

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index dim)
{
  std::normal_distribution<double> n;
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

}  // namespace

TEST(Polar, NoJumpUnitary)
{
  for (double g : {0.0, 0.05, 0.1, 0.3}) {
    const QuantumCode code = leung4();
    const Matrix a = enlarge(ad_single(g), 4).at("0000").op;
    const PolarDecomposition pd = polar_decompose(a, code.projector);
    EXPECT_LE(max_abs(restrict(pd.u, corner_basis()) - no_jump_u(g)), 1e-9) << g;
    EXPECT_LE(max_abs(pd.u.adjoint() * pd.u - identity<double>(16)), 1e-12);
    EXPECT_LE(max_abs(a * code.projector - pd.u * pd.j), 1e-12);
  }
}

TEST(Polar, NoiselessLimitIsIdentityBlock)
{
  const QuantumCode code = leung4();
  const PolarDecomposition pd = polar_decompose(identity<double>(16), code.projector);
  EXPECT_LE(max_abs(restrict(pd.u, corner_basis()) - identity<double>(4)), 1e-12);
}

TEST(Polar, InvertibleMatrixWithFullProjector)
{
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_matrix(rng, 4);
    const PolarDecomposition pd = polar_decompose(a, identity<double>(4));
    EXPECT_LE(max_abs(pd.u.adjoint() * pd.u - identity<double>(4)), 1e-10);
    EXPECT_LE(max_abs(pd.u * pd.j - a), 1e-10);
    // oracle: U = A (A^dag A)^{-1/2}
    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(a.adjoint() * a));
    const Matrix inv_sqrt = es.operatorInverseSqrt();
    EXPECT_LE(max_abs(pd.u - a * inv_sqrt), 1e-9);
  }
}

TEST(Polar, AllWeightOneErrorsFactor)
{
  for (double g : {0.05, 0.1, 0.2}) {
    const QuantumCode code = leung4();
    for (const auto& e : ad_weight_one_errors(g)) {
      const PolarDecomposition pd = polar_decompose(e.op, code.projector);
      EXPECT_LE(max_abs(e.op * code.projector - pd.u * pd.j), 1e-9) << e.label;
      EXPECT_LE(max_abs(pd.u.adjoint() * pd.u - identity<double>(16)), 1e-12) << e.label;
    }
  }
}

TEST(Polar, RejectsNonProjector)
{
  EXPECT_THROW(polar_decompose(identity<double>(4), Matrix(2.0 * identity<double>(4))), std::invalid_argument);
}

TEST(Residue, NoJumpCornerForm)
{
  const double g = 0.1;
  const QuantumCode code = leung4();
  const Matrix a = enlarge(ad_single(g), 4).at("0000").op;
  const ResidueParameters rp = residue_parameters(code, a);
  EXPECT_NEAR(rp.p_l * rp.lambda_l, 0.81, 1e-12);
  const ResidueResult r = residue(a, code.projector, rp.p_l, rp.lambda_l);
  EXPECT_LE(max_abs(restrict(r.pi, corner_basis()) - no_jump_pi_corner(g) * corner_ones()), 1e-12);
  // nothing outside the corner block
  Matrix embedded = Matrix::Zero(16, 16);
  for (int i : {0, 15})
    for (int j : {0, 15}) embedded(i, j) = no_jump_pi_corner(g);
  EXPECT_LE(max_abs(r.pi - embedded), 1e-12);
  EXPECT_TRUE(r.bound_ok);
}

TEST(Residue, SmallDampingExpansion)
{
  const double g = 1e-3;
  const QuantumCode code = leung4();
  const Matrix a = enlarge(ad_single(g), 4).at("0000").op;
  const ResidueParameters rp = residue_parameters(code, a);
  const ResidueResult r = residue(a, code.projector, rp.p_l, rp.lambda_l);
  EXPECT_LE(max_abs(restrict(r.pi, corner_basis()) - (g * g / 2.0) * corner_ones()), 1e-6);
}

TEST(Residue, ZeroForExactError)
{
  const QuantumCode code = repetition3();
  const Matrix a = enlarge(bitflip_single(0.2), 3).at("000").op;
  const ResidueParameters rp = residue_parameters(code, a);
  EXPECT_NEAR(rp.lambda_l, 1.0, 1e-12);
  const ResidueResult r = residue(a, code.projector, rp.p_l, rp.lambda_l);
  EXPECT_LE(max_abs(r.pi), 1e-12);
}

TEST(Residue, NoiselessIsZero)
{
  const QuantumCode code = leung4();
  const Matrix a = identity<double>(16);
  const ResidueParameters rp = residue_parameters(code, a);
  EXPECT_LE(max_abs(residue(a, code.projector, rp.p_l, rp.lambda_l).pi), 1e-12);
}

TEST(Residue, BoundHoldsForWeightOneErrors)
{
  for (double g : {0.05, 0.1, 0.2}) {
    const QuantumCode code = leung4();
    for (const auto& e : ad_weight_one_errors(g)) {
      const ResidueParameters rp = residue_parameters(code, e.op);
      const ResidueResult r = residue(e.op, code.projector, rp.p_l, rp.lambda_l);
      EXPECT_GE(r.max_singular_value, 0.0);
      EXPECT_TRUE(r.bound_ok) << e.label << " at " << g << ": " << r.max_singular_value << " > " << r.bound;
    }
  }
}

TEST(Residue, RejectsInconsistentParameters)
{
  const QuantumCode code = leung4();
  const Matrix a = enlarge(ad_single(0.1), 4).at("0000").op;
  EXPECT_THROW(residue(a, code.projector, 1.0, 1.0), std::invalid_argument);
}

TEST(RepetitionRecovery, OperatorsAndCompleteness)
{
  const RecoveryOperation r = repetition_recovery();
  ASSERT_EQ(r.ops.size(), 4u);
  const Matrix r1 = outer(basis_state("000"), basis_state("100")) + outer(basis_state("111"), basis_state("011"));
  EXPECT_LE(max_abs(r.ops[1].op - r1), 1e-15);
  EXPECT_LE(r.completeness_defect(), 1e-15);
  EXPECT_FALSE(r.leftover.has_value());
  // no dependence on p: the same operators are returned on every call
  EXPECT_EQ(repetition_recovery().ops[2].op, r.ops[2].op);
}

TEST(StandardRecovery, Structure)
{
  const double g = 0.1;
  const RecoveryOperation r = standard_ad_recovery(g);
  ASSERT_EQ(r.ops.size(), 5u);
  ASSERT_TRUE(r.leftover.has_value());
  EXPECT_LE(r.completeness_defect(), 1e-12);
  // R0 reads |0_L><v0| + |1_L><1_L| with v0 proportional to |0000> + (1-g)^2 |1111>
  const QuantumCode code = leung4();
  const StateVector v0 = r.ops[0].op.adjoint() * code.zero_logical;
  EXPECT_NEAR(std::abs(v0(15) / v0(0)), (1.0 - g) * (1.0 - g), 1e-14);
  EXPECT_NEAR(v0(0).real(), 1.0 / std::sqrt(1.0 + std::pow(1.0 - g, 4)), 1e-14);
  EXPECT_NEAR(v0.norm(), 1.0, 1e-14);
  // the code projector is not one of the operators
  for (const auto& op : r.ops) EXPECT_GT(max_abs(op.op - code.projector), 1e-3);
  EXPECT_GT(max_abs(*r.leftover - code.projector), 1e-3);
}

TEST(CodeProjectedRecovery, Structure)
{
  const RecoveryOperation r = cp_recovery();
  ASSERT_EQ(r.ops.size(), 10u);
  const QuantumCode code = leung4();
  EXPECT_LE(max_abs(r.ops[0].op - code.projector), 1e-15);
  EXPECT_LE(max_abs(r.ops[6].op - outer(code.zero_logical, basis_state("1001"))), 1e-15);
  EXPECT_EQ(r.ops[6].label, "R7");
  EXPECT_LE(r.completeness_defect(), 1e-12);
}

TEST(FletcherRecovery, SymmetricPointIsCodeProjected)
{
  const double s = 1.0 / std::sqrt(2.0);
  const RecoveryOperation f = fletcher_recovery(s, s);
  const RecoveryOperation cp = cp_recovery();
  ASSERT_EQ(f.ops.size(), cp.ops.size());
  for (std::size_t k = 0; k < f.ops.size(); ++k) EXPECT_LE(max_abs(f.ops[k].op - cp.ops[k].op), 1e-15) << k;
}

TEST(FletcherRecovery, LeadingPairCoversTheCornerStates)
{
  std::mt19937_64 rng(42);
  std::normal_distribution<double> n;
  Matrix expect = Matrix::Zero(16, 16);
  for (const auto& s : corner_basis()) expect += outer(s, s);
  for (int trial = 0; trial < 50; ++trial) {
    Complex a(n(rng), n(rng));
    Complex b(n(rng), n(rng));
    const double norm = std::sqrt(std::norm(a) + std::norm(b));
    a /= norm;
    b /= norm;
    const RecoveryOperation r = fletcher_recovery(a, b);
    const Matrix lead = r.ops[0].op.adjoint() * r.ops[0].op + r.ops[1].op.adjoint() * r.ops[1].op;
    EXPECT_LE(max_abs(lead - expect), 1e-12);
    EXPECT_LE(r.completeness_defect(), 1e-10);
  }
  EXPECT_THROW(fletcher_recovery(1.0, 1.0), std::invalid_argument);
}

TEST(PolarRecovery, BitflipMatchesRepetitionRecovery)
{
  const QuantumCode code = repetition3();
  for (double p : {0.05, 0.2, 0.4}) {
    const KrausChannel flips = leading(enlarge(bitflip_single(p), 3), 4);
    const RecoveryOperation polar = polar_recovery(code, flips.kraus);
    const RecoveryOperation rep = repetition_recovery();
    ASSERT_EQ(polar.ops.size(), rep.ops.size());
    EXPECT_FALSE(polar.leftover.has_value());
    EXPECT_LE(polar.completeness_defect(), 1e-10);
    for (std::size_t k = 0; k < rep.ops.size(); ++k) {
      const Matrix& rp = polar.ops[k].op;
      const Matrix& rr = rep.ops[k].op;
      EXPECT_LE(max_abs(rp.adjoint() * rp - rr.adjoint() * rr), 1e-10) << k;
      for (const auto& word : {code.zero_logical, code.one_logical}) {
        const StateVector corrupted = flips.kraus[k].op * word;
        const StateVector x = rp * corrupted;
        const StateVector y = rr * corrupted;
        // equal up to a global phase per operator
        EXPECT_NEAR(std::abs(x.dot(y)), x.norm() * y.norm(), 1e-10);
        EXPECT_NEAR(x.norm(), y.norm(), 1e-10);
      }
    }
  }
}

TEST(PolarRecovery, UnambiguousSyndromes)
{
  const QuantumCode code = repetition3();
  const KrausChannel flips = leading(enlarge(bitflip_single(0.3), 3), 4);
  std::vector<Matrix> us;
  for (const auto& e : flips.kraus) us.push_back(polar_decompose(e.op, code.projector).u);
  for (std::size_t l = 0; l < us.size(); ++l) {
    for (std::size_t m = 0; m < us.size(); ++m) {
      const Matrix overlap = code.projector * us[l].adjoint() * us[m] * code.projector;
      const Matrix expect = l == m ? code.projector : Matrix(Matrix::Zero(8, 8));
      EXPECT_LE(max_abs(overlap - expect), 1e-10);
    }
  }
}

TEST(PolarRecovery, AmbiguousSyndromesRejected)
{
  const KrausChannel flips = leading(enlarge(bitflip_single(0.3), 3), 5);
  EXPECT_THROW(polar_recovery(repetition3(), flips.kraus), std::invalid_argument);
}

TEST(Recoveries, TracePreservingEverywhere)
{
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 0.999);
  for (int trial = 0; trial < 20; ++trial) {
    const double g = u(rng);
    EXPECT_LE(standard_ad_recovery(g).completeness_defect(), 1e-10);
    const Optimum o = closed_form_optimum(g);
    EXPECT_LE(fletcher_recovery(o.a_bar, o.b_bar).completeness_defect(), 1e-10);
  }
  EXPECT_LE(cp_recovery().completeness_defect(), 1e-10);
  EXPECT_LE(repetition_recovery().completeness_defect(), 1e-10);
}
