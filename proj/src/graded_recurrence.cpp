#include "orthsig/graded_recurrence.hpp"

#include <stdexcept>

namespace orthsig {

namespace {

Eigen::MatrixXd to_double(const RatMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(static_cast<long>(i), static_cast<long>(j)) = rat_to_double(m.at(i, j));
  return out;
}

std::string block_name(int n, int m, int i, int k) {
  return "M^" + std::to_string(k) + "_{" + std::to_string(n) + "," + std::to_string(m) + "," +
         std::to_string(i + 1) + "}";
}

}  // namespace

GradedFrame make_graded_frame(int d, int n_max) {
  if (d < 1 || n_max < 0) throw std::invalid_argument("make_graded_frame: d >= 1, n_max >= 0");
  GradedFrame f;
  f.d = d;
  f.n_max = n_max;
  f.generators = lyndon_words(d, std::max(1, n_max));
  f.monomials.resize(static_cast<std::size_t>(n_max) + 1);
  f.expansions.resize(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    f.monomials[static_cast<std::size_t>(n)] = radford_monomials(d, n);
    for (const auto& mono : f.monomials[static_cast<std::size_t>(n)])
      f.expansions[static_cast<std::size_t>(n)].push_back(radford_expand(mono));
  }
  return f;
}

std::vector<DegreeBlock> block_orth_polys(const GradedFrame& frame, const InnerProduct& inner) {
  std::vector<DegreeBlock> out;
  std::vector<TensorPoly> lower;                 // cumulative monomial expansions
  std::vector<std::vector<Rat>> lower_gram;      // their Gram, grown row by row

  for (int n = 0; n <= frame.n_max; ++n) {
    const auto& exps = frame.expansions[static_cast<std::size_t>(n)];
    DegreeBlock block;
    if (n == 0) {
      block.polys = {TensorPoly::one()};
    } else {
      const std::size_t low = lower.size();
      RatMatrix gram(low, low);
      for (std::size_t i = 0; i < low; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
          gram.at(i, j) = lower_gram[i][j];
          gram.at(j, i) = lower_gram[i][j];
        }
      RatMatrix gram_inv;
      try {
        gram_inv = gram.inverse();
      } catch (const std::runtime_error&) {
        throw std::runtime_error("block_orth_polys: functional not quasi-definite at degree " +
                                 std::to_string(n - 1));
      }
      for (const auto& e : exps) {
        std::vector<Rat> rhs(low);
        for (std::size_t j = 0; j < low; ++j) rhs[j] = inner(e, lower[j]);
        TensorPoly p = e;
        for (std::size_t a = 0; a < low; ++a) {
          Rat lambda = 0;
          for (std::size_t b = 0; b < low; ++b)
            if (rhs[b] != 0) lambda += gram_inv.at(a, b) * rhs[b];
          if (lambda != 0) p -= lambda * lower[a];
        }
        block.polys.push_back(std::move(p));
      }
    }
    const std::size_t rn = block.polys.size();
    block.H = RatMatrix(rn, rn);
    for (std::size_t i = 0; i < rn; ++i)
      for (std::size_t j = i; j < rn; ++j) {
        block.H.at(i, j) = inner(block.polys[i], block.polys[j]);
        block.H.at(j, i) = block.H.at(i, j);
      }
    try {
      block.H.inverse();
    } catch (const std::runtime_error&) {
      throw std::runtime_error("block_orth_polys: functional not quasi-definite at degree " +
                               std::to_string(n));
    }
    for (const auto& e : exps) {
      std::vector<Rat> row(lower.size() + 1);
      for (std::size_t j = 0; j < lower.size(); ++j) row[j] = inner(e, lower[j]);
      row[lower.size()] = inner(e, e);
      lower.push_back(e);
      lower_gram.push_back(std::move(row));
    }
    out.push_back(std::move(block));
  }
  return out;
}

RecurrenceSet recurrence_matrices(const GradedFrame& frame, const std::vector<DegreeBlock>& polys,
                                  const InnerProduct& inner) {
  RecurrenceSet rset;
  rset.n_max = frame.n_max;
  for (const auto& block : polys) rset.H.push_back(block.H);

  for (int n = 1; n <= frame.n_max; ++n) {
    for (int m = 1; m <= n; ++m) {
      const auto& gens = frame.generators[static_cast<std::size_t>(m - 1)];
      for (std::size_t i = 0; i < gens.size(); ++i) {
        // w_{m,i} p_{n-m}, one shuffle per component.
        std::vector<TensorPoly> lhs;
        for (const auto& p : polys[static_cast<std::size_t>(n - m)].polys)
          lhs.push_back(shuffle(TensorPoly(gens[i]), p));
        for (int j = 0; j <= n; ++j) {
          RatMatrix pairings(lhs.size(), polys[static_cast<std::size_t>(j)].polys.size());
          for (std::size_t a = 0; a < lhs.size(); ++a)
            for (std::size_t b = 0; b < polys[static_cast<std::size_t>(j)].polys.size(); ++b)
              pairings.at(a, b) = inner(lhs[a], polys[static_cast<std::size_t>(j)].polys[b]);
          if (j < n - 2 * m) {
            // Below the support cutoff of the recurrence: must vanish.
            if (!pairings.is_zero())
              rset.below_cutoff_failures.push_back(block_name(n, m, static_cast<int>(i), j - (n - m)));
            continue;
          }
          const int k = j - (n - m);  // shifted index in [-m, m]
          RatMatrix M = pairings * polys[static_cast<std::size_t>(j)].H.inverse();
          rset.M[{n, m, static_cast<int>(i), k}] = std::move(M);
        }
      }
    }
  }
  return rset;
}

RatMatrix a_matrix(const RecurrenceSet& rset, int n, int m, int i) { return rset.at(n, m, i, m); }

RatMatrix c_matrix(const RecurrenceSet& rset, int n, int m, int i) {
  // Eq. A_C: A_{n,m,i} H_n = H_{n-m} C^T, so C = (H_{n-m}^{-1} A H_n)^T.
  const RatMatrix& A = rset.at(n, m, i, m);
  return (rset.H[static_cast<std::size_t>(n - m)].inverse() * A *
          rset.H[static_cast<std::size_t>(n)])
      .transpose();
}

RatMatrix l_matrix(const GradedFrame& frame, int n, int m, int i) {
  const auto& rows = frame.monomials[static_cast<std::size_t>(n - m)];
  const auto& cols = frame.monomials[static_cast<std::size_t>(n)];
  const Word& gen = frame.generators[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(i)];
  RatMatrix L(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    const RadfordMonomial prod = rows[a].times(gen);
    bool found = false;
    for (std::size_t b = 0; b < cols.size(); ++b)
      if (cols[b] == prod) {
        L.at(a, b) = 1;
        found = true;
        break;
      }
    if (!found) throw std::logic_error("l_matrix: product monomial missing from frame");
  }
  return L;
}

namespace {

// Stack of A_{n,m,i} (or C^T) blocks over m in [n], i in [N_m].
RatMatrix joint_stack(const GradedFrame& frame, int n,
                      const std::function<RatMatrix(int m, int i)>& block) {
  std::vector<RatMatrix> parts;
  std::size_t rows = 0;
  const std::size_t cols = frame.r(n);
  for (int m = 1; m <= n; ++m)
    for (std::size_t i = 0; i < frame.generator_count(m); ++i) {
      parts.push_back(block(m, static_cast<int>(i)));
      rows += parts.back().rows();
    }
  RatMatrix joint(rows, cols);
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t a = 0; a < p.rows(); ++a)
      for (std::size_t b = 0; b < p.cols(); ++b) joint.at(off + a, b) = p.at(a, b);
    off += p.rows();
  }
  return joint;
}

}  // namespace

RankAuditReport rank_audit(const GradedFrame& frame, const std::vector<DegreeBlock>& polys,
                           const RecurrenceSet& rset) {
  RankAuditReport report;
  report.below_cutoff_failures = rset.below_cutoff_failures;
  if (!report.below_cutoff_failures.empty()) report.all_ok = false;

  // Eq. M_identity on every index pair inside the frame.
  for (const auto& [key, M] : rset.M) {
    const auto [n, m, i, k] = key;
    if (n + k < m || n + k > rset.n_max) continue;  // partner block outside the frame
    if (!rset.has(n + k, m, i, -k)) continue;
    const RatMatrix lhs = M * rset.H[static_cast<std::size_t>(n - m + k)];
    const RatMatrix rhs =
        rset.H[static_cast<std::size_t>(n - m)] * rset.at(n + k, m, i, -k).transpose();
    if (!(lhs == rhs)) {
      report.m_identity_failures.push_back(block_name(n, m, i, k));
      report.all_ok = false;
    }
  }

  // Defining recurrence reconstruction, exact.
  for (int n = 1; n <= frame.n_max; ++n)
    for (int m = 1; m <= n; ++m)
      for (std::size_t i = 0; i < frame.generator_count(m); ++i) {
        const Word& gen = frame.generators[static_cast<std::size_t>(m - 1)][i];
        const auto& pnm = polys[static_cast<std::size_t>(n - m)].polys;
        for (std::size_t a = 0; a < pnm.size(); ++a) {
          TensorPoly lhs = shuffle(TensorPoly(gen), pnm[a]);
          TensorPoly rhs;
          for (int k = -m; k <= m; ++k) {
            if (!rset.has(n, m, static_cast<int>(i), k)) continue;
            const RatMatrix& M = rset.at(n, m, static_cast<int>(i), k);
            const auto& target = polys[static_cast<std::size_t>(n - m + k)].polys;
            for (std::size_t b = 0; b < target.size(); ++b)
              if (M.at(a, b) != 0) rhs += M.at(a, b) * target[b];
          }
          if (!(lhs == rhs)) {
            report.reconstruction_failures.push_back(block_name(n, m, static_cast<int>(i), 99));
            report.all_ok = false;
          }
        }
      }

  for (int n = 1; n <= frame.n_max; ++n) {
    for (int m = 1; m <= n; ++m)
      for (std::size_t i = 0; i < frame.generator_count(m); ++i) {
        RankAuditReport::Block b;
        b.n = n;
        b.m = m;
        b.i = static_cast<int>(i);
        b.expected = frame.r(n - m);
        const RatMatrix A = a_matrix(rset, n, m, static_cast<int>(i));
        const RatMatrix C = c_matrix(rset, n, m, static_cast<int>(i));
        b.rank_A = A.rank();
        b.rank_C = C.rank();
        const RatMatrix L = l_matrix(frame, n, m, static_cast<int>(i));
        b.L_orthonormal = (L * L.transpose()) == RatMatrix::identity(L.rows());
        b.C_checked_directly = (n + m <= rset.n_max);
        b.C_direct_matches = true;
        if (b.C_checked_directly)
          b.C_direct_matches = (rset.at(n + m, m, static_cast<int>(i), -m) == C);
        if (b.rank_A != b.expected || b.rank_C != b.expected || !b.L_orthonormal ||
            !b.C_direct_matches)
          report.all_ok = false;
        report.blocks.push_back(b);
      }

    RankAuditReport::Joint joint;
    joint.n = n;
    joint.expected = frame.r(n);
    joint.rank_A_joint =
        joint_stack(frame, n, [&](int m, int i) { return a_matrix(rset, n, m, i); }).rank();
    joint.rank_C_joint =
        joint_stack(frame, n, [&](int m, int i) { return c_matrix(rset, n, m, i).transpose(); })
            .rank();
    joint.rank_L_joint =
        joint_stack(frame, n, [&](int m, int i) { return l_matrix(frame, n, m, i); }).rank();
    if (joint.rank_A_joint != joint.expected || joint.rank_C_joint != joint.expected ||
        joint.rank_L_joint != joint.expected)
      report.all_ok = false;
    report.joints.push_back(joint);
  }
  return report;
}

std::vector<TensorPoly> reconstruct_via_generalized_inverse(const GradedFrame& frame,
                                                            const std::vector<DegreeBlock>& polys,
                                                            const RecurrenceSet& rset, int n) {
  const RatMatrix An =
      joint_stack(frame, n, [&](int m, int i) { return a_matrix(rset, n, m, i); });
  RatMatrix Dt;
  try {
    Dt = An.left_inverse();  // r_n x R_n
  } catch (const std::runtime_error&) {
    throw std::runtime_error("reconstruct_via_generalized_inverse: A_n is rank deficient at degree " +
                             std::to_string(n));
  }
  std::vector<TensorPoly> out(frame.r(n));
  std::size_t off = 0;
  for (int m = 1; m <= n; ++m)
    for (std::size_t i = 0; i < frame.generator_count(m); ++i) {
      const Word& gen = frame.generators[static_cast<std::size_t>(m - 1)][i];
      const auto& pnm = polys[static_cast<std::size_t>(n - m)].polys;
      // D^T_{n,m,i} p_{n-m}, then shuffle by the generator.
      for (std::size_t row = 0; row < out.size(); ++row) {
        TensorPoly combo;
        for (std::size_t b = 0; b < pnm.size(); ++b)
          if (Dt.at(row, off + b) != 0) combo += Dt.at(row, off + b) * pnm[b];
        if (!combo.is_zero()) out[row] += shuffle(TensorPoly(gen), combo);
      }
      // Subtract D^T M^k p_{n-m+k} for k < m.
      for (int k = -m; k <= m - 1; ++k) {
        if (!rset.has(n, m, static_cast<int>(i), k)) continue;
        const RatMatrix& M = rset.at(n, m, static_cast<int>(i), k);
        const auto& target = polys[static_cast<std::size_t>(n - m + k)].polys;
        for (std::size_t row = 0; row < out.size(); ++row) {
          TensorPoly combo;
          for (std::size_t a = 0; a < pnm.size(); ++a) {
            const Rat& dta = Dt.at(row, off + a);
            if (dta == 0) continue;
            for (std::size_t b = 0; b < target.size(); ++b)
              if (M.at(a, b) != 0) combo += (dta * M.at(a, b)) * target[b];
          }
          out[row] -= combo;
        }
      }
      off += pnm.size();
    }
  return out;
}

namespace {

// Symmetric inverse square root (and square root) of an exact Gram block.
void sqrt_pair(const RatMatrix& H, Eigen::MatrixXd& sqrtH, Eigen::MatrixXd& invsqrtH) {
  Eigen::MatrixXd Hd = to_double(H);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Hd);
  if (es.info() != Eigen::Success) throw std::runtime_error("jacobi: eigensolver failed");
  const Eigen::VectorXd ev = es.eigenvalues();
  for (long i = 0; i < ev.size(); ++i)
    if (ev(i) <= 0) throw std::runtime_error("jacobi: H_n not positive definite numerically");
  sqrtH = es.operatorSqrt();
  invsqrtH = es.operatorInverseSqrt();
}

struct OrthonormalBlocks {
  // Mtil[{n,m,i,k}] for k in [0,m]: coefficient of ptilde_{n-m+k} in
  // w_{m,i} ptilde_{n-m}. Negative k given by transposition.
  std::map<std::tuple<int, int, int, int>, Eigen::MatrixXd> Mtil;
};

OrthonormalBlocks orthonormalize(const RecurrenceSet& rset) {
  OrthonormalBlocks ob;
  std::vector<Eigen::MatrixXd> sqrtH(rset.H.size()), invsqrtH(rset.H.size());
  for (std::size_t n = 0; n < rset.H.size(); ++n) sqrt_pair(rset.H[n], sqrtH[n], invsqrtH[n]);
  for (const auto& [key, M] : rset.M) {
    const auto [n, m, i, k] = key;
    if (k < 0) continue;
    ob.Mtil[key] = invsqrtH[static_cast<std::size_t>(n - m)] * to_double(M) *
                   sqrtH[static_cast<std::size_t>(n - m + k)];
  }
  return ob;
}

// Coefficient of ptilde_r in w_{m,i} ptilde_n (orthonormal frame); r ranges
// over [n-m, n+m]. Requires n+m <= n_max.
Eigen::MatrixXd coefficient_block(const OrthonormalBlocks& ob, int m, int i, int n, int r) {
  if (r >= n) {
    auto it = ob.Mtil.find({n + m, m, i, r - n});
    if (it == ob.Mtil.end()) throw std::logic_error("coefficient_block: missing block");
    return it->second;
  }
  auto it = ob.Mtil.find({m + r, m, i, n - r});
  if (it == ob.Mtil.end()) throw std::logic_error("coefficient_block: missing block");
  return it->second.transpose();
}

}  // namespace

Eigen::MatrixXd jacobi_truncation(const RecurrenceSet& rset, const GradedFrame& frame, int m, int i,
                                  int degree_cut) {
  if (degree_cut + m > rset.n_max)
    throw std::invalid_argument("jacobi_truncation: degree_cut + m exceeds the frame");
  OrthonormalBlocks ob = orthonormalize(rset);
  std::vector<std::size_t> offsets{0};
  for (int n = 0; n <= degree_cut; ++n) offsets.push_back(offsets.back() + frame.r(n));
  const std::size_t dim = offsets.back();
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(static_cast<long>(dim), static_cast<long>(dim));
  for (int a = 0; a <= degree_cut; ++a)
    for (int b = std::max(0, a - m); b <= std::min(degree_cut, a + m); ++b) {
      const Eigen::MatrixXd blk = coefficient_block(ob, m, i, a, b);
      J.block(static_cast<long>(offsets[static_cast<std::size_t>(a)]),
              static_cast<long>(offsets[static_cast<std::size_t>(b)]), blk.rows(), blk.cols()) = blk;
    }
  return J;
}

double commutativity_residual(const RecurrenceSet& rset, const GradedFrame& frame) {
  OrthonormalBlocks ob = orthonormalize(rset);
  double residual = 0;
  const int n_max = rset.n_max;
  for (int m1 = 1; m1 <= n_max; ++m1)
    for (std::size_t i = 0; i < frame.generator_count(m1); ++i)
      for (int m2 = m1; m2 <= n_max; ++m2)
        for (std::size_t j = 0; j < frame.generator_count(m2); ++j)
          for (int n1 = 0; n1 + std::max({m1, m2}) <= n_max; ++n1)
            for (int n2 = n1; n2 + std::max({m1, m2}) <= n_max; ++n2) {
              if (m1 == m2 && i == j) continue;
              // (w1 ptil_{n1}, w2 ptil_{n2}^T) via either expansion.
              Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(
                  static_cast<long>(frame.r(n1)), static_cast<long>(frame.r(n2)));
              Eigen::MatrixXd rhs = lhs;
              const int lo = std::max(std::max(n1 - m1, n2 - m2), 0);
              const int hi = std::min(n1 + m1, n2 + m2);
              for (int r = lo; r <= hi; ++r)
                lhs += coefficient_block(ob, m1, static_cast<int>(i), n1, r) *
                       coefficient_block(ob, m2, static_cast<int>(j), n2, r).transpose();
              const int lo2 = std::max(std::max(n1 - m2, n2 - m1), 0);
              const int hi2 = std::min(n1 + m2, n2 + m1);
              for (int r = lo2; r <= hi2; ++r)
                rhs += coefficient_block(ob, m2, static_cast<int>(j), n1, r) *
                       coefficient_block(ob, m1, static_cast<int>(i), n2, r).transpose();
              residual = std::max(residual, (lhs - rhs).cwiseAbs().maxCoeff());
            }
  return residual;
}

}  // namespace orthsig
