#include "qtrack/channel.hpp"

#include <cmath>

namespace qtrack {

namespace {

Mat2c apply_kraus(const std::vector<Mat2c>& ops, const Mat2c& rho) {
  Mat2c out = Mat2c::Zero();
  for (const auto& k : ops) out += k * rho * k.adjoint();
  return out;
}

Mat4c choi_from_kraus(const std::vector<Mat2c>& ops) {
  // K = sum_k (I (x) K_k) |Psi+><Psi+| (I (x) K_k)^dag with |Psi+> = |00>+|11>
  Mat4c choi = Mat4c::Zero();
  for (const auto& k : ops) {
    Eigen::Vector4cd v;
    v << k(0, 0), k(1, 0), k(0, 1), k(1, 1);  // (I (x) K)|Psi+>, index 2a+b
    choi += v * v.adjoint();
  }
  return choi;
}

void affine_from_kraus(const std::vector<Mat2c>& ops, Mat3& m, Vec3& c) {
  const Mat2c unital = apply_kraus(ops, Mat2c::Identity());
  for (int k = 0; k < 3; ++k) {
    c(k) = 0.5 * (unital * pauli(k + 1)).trace().real();
    const Mat2c img = apply_kraus(ops, pauli(k + 1));
    for (int j = 0; j < 3; ++j) {
      // M_jk = (1/2) Tr[sigma_j C(sigma_k)]
      m(j, k) = 0.5 * (img * pauli(j + 1)).trace().real();
    }
  }
}

Vec3 bloch_of(const Mat2c& rho) {
  return Vec3((rho * pauli_x()).trace().real(), (rho * pauli_y()).trace().real(),
              (rho * pauli_z()).trace().real());
}

}  // namespace

Mat4c kron(const Mat2c& a, const Mat2c& b) {
  Mat4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Mat2c partial_trace_input(const Mat4c& m) {
  Mat2c out;
  for (int b = 0; b < 2; ++b)
    for (int bp = 0; bp < 2; ++bp)
      out(b, bp) = m(b, bp) + m(2 + b, 2 + bp);
  return out;
}

Mat2c partial_trace_output(const Mat4c& m) {
  Mat2c out;
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap)
      out(a, ap) = m(2 * a, 2 * ap) + m(2 * a + 1, 2 * ap + 1);
  return out;
}

Mat4c choi_of_affine(const AffineParams& a) {
  return 0.5 * (kron(pauli_i(), pauli_i()) + a.s1 * kron(pauli_i(), pauli_x()) +
                a.mu1 * kron(pauli_x(), pauli_x()) - a.mu2 * kron(pauli_y(), pauli_y()) +
                a.mu3 * kron(pauli_z(), pauli_z()));
}

QuantumChannel QuantumChannel::from_kraus(std::vector<Mat2c> ops) {
  QuantumChannel ch;
  ch.choi = choi_from_kraus(ops);
  affine_from_kraus(ops, ch.affine_m, ch.affine_c);
  ch.kraus = std::move(ops);
  return ch;
}

KrausDecomposition kraus_of_solution(const TrackingSolution& sol) {
  const Unitary2 u = su2_from_so3(sol.U);
  const Unitary2 v = su2_from_so3(sol.V);
  KrausDecomposition kd;
  if (sol.procedure == Procedure::B) {
    kd.ops = {u * v};
    return kd;
  }
  const AffineParams& a = *sol.affine;
  const double chi = std::atan2(a.mu3, std::sqrt(std::max(0.0, 1.0 - a.mu3 * a.mu3)));
  const double eta = std::atan2(a.mu2, std::sqrt(std::max(0.0, 1.0 - a.mu2 * a.mu2)));
  const Mat2c plus = 0.5 * (Mat2c() << 1, 1, 1, 1).finished();
  const Mat2c minus = 0.5 * (Mat2c() << 1, -1, -1, 1).finished();
  const Mat2c m1 =
      std::cos(0.5 * (chi - eta)) * plus + std::sin(0.5 * (chi + eta)) * minus;
  const Mat2c m2 =
      std::sin(0.5 * (chi - eta)) * plus - std::cos(0.5 * (chi + eta)) * minus;
  kd.ops = {u * m1 * v, u * pauli_y() * m2 * v};
  kd.y_corrected = 1;

  Mat2c completeness = Mat2c::Zero();
  for (const auto& k : kd.ops) completeness += k.adjoint() * k;
  if ((completeness - Mat2c::Identity()).norm() > tol::state) {
    throw Error(Errc::internal_inconsistency, "Kraus operators are not complete");
  }
  return kd;
}

QuantumChannel choi_of_solution(const TrackingSolution& sol) {
  QuantumChannel ch;
  const Unitary2 u = su2_from_so3(sol.U);
  const Unitary2 v = su2_from_so3(sol.V);
  const AffineParams canonical =
      sol.affine ? *sol.affine : AffineParams{1.0, 1.0, 1.0, 0.0};
  const Mat4c w = kron(v.transpose(), u);
  ch.choi = w * choi_of_affine(canonical) * w.adjoint();

  KrausDecomposition kd = kraus_of_solution(sol);
  ch.kraus = std::move(kd.ops);
  ch.y_corrected_kraus = kd.y_corrected;

  const Vec3 scale(canonical.mu1, canonical.mu2, canonical.mu3);
  ch.affine_m = sol.U * scale.asDiagonal() * sol.V;
  ch.affine_c = sol.U * Vec3(canonical.s1, 0.0, 0.0);

  const CptpReport report = cptp_check(ch);
  if (!report.pass) {
    throw Error(Errc::internal_inconsistency, "solution channel failed the CPTP checks");
  }
  return ch;
}

QubitState apply(const QuantumChannel& ch, const QubitState& s) {
  const Mat4c lifted = kron(s.density().transpose(), Mat2c::Identity()) * ch.choi;
  return QubitState::from_density(partial_trace_input(lifted));
}

QuantumChannel dephasing(double p) {
  if (!(p > 0.0 && p <= 0.5)) {
    throw Error(Errc::out_of_range, "dephasing strength must lie in (0, 1/2]");
  }
  return QuantumChannel::from_kraus(
      {std::sqrt(1.0 - p) * Mat2c::Identity(), std::sqrt(p) * pauli_z()});
}

QuantumChannel identity_channel() {
  return QuantumChannel::from_kraus({Mat2c::Identity()});
}

QuantumChannel depolarizing_channel() {
  return QuantumChannel::from_kraus(
      {0.5 * pauli_i(), 0.5 * pauli_x(), 0.5 * pauli_y(), 0.5 * pauli_z()});
}

CptpReport cptp_check(const QuantumChannel& ch) {
  CptpReport r;
  const Mat4c herm = 0.5 * (ch.choi + ch.choi.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat4c> es(herm);
  r.min_choi_eigenvalue = es.eigenvalues().minCoeff();
  r.trace_preservation_residual =
      (partial_trace_output(ch.choi) - Mat2c::Identity()).norm();

  Mat2c completeness = Mat2c::Zero();
  for (const auto& k : ch.kraus) completeness += k.adjoint() * k;
  r.kraus_completeness_residual = (completeness - Mat2c::Identity()).norm();

  // the three representations must act identically on |0>, |1>, |+>, |+i>
  const Vec3 probes[4] = {Vec3(0, 0, 1), Vec3(0, 0, -1), Vec3(1, 0, 0), Vec3(0, 1, 0)};
  r.cross_representation_residual = 0.0;
  for (const Vec3& b : probes) {
    const Mat2c rho = bloch_to_density(b);
    const Mat2c via_choi =
        partial_trace_input(kron(rho.transpose(), Mat2c::Identity()) * ch.choi);
    const Mat2c via_kraus = apply_kraus(ch.kraus, rho);
    const Mat2c via_affine = bloch_to_density(ch.affine_m * b + ch.affine_c);
    const Vec3 bc = bloch_of(via_choi);
    const Vec3 bk = bloch_of(via_kraus);
    const Vec3 ba = bloch_of(via_affine);
    r.cross_representation_residual =
        std::max({r.cross_representation_residual, (bc - bk).norm(), (bc - ba).norm(),
                  (bk - ba).norm()});
  }

  r.choi_psd = r.min_choi_eigenvalue >= -1e-10;
  r.trace_preserving = r.trace_preservation_residual <= 1e-12;
  r.kraus_complete = r.kraus_completeness_residual <= 1e-12;
  r.representations_agree = r.cross_representation_residual <= 1e-10;
  r.pass = r.choi_psd && r.trace_preserving && r.kraus_complete && r.representations_agree;
  return r;
}

}  // namespace qtrack
