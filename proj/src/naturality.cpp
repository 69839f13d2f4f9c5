#include "orthsig/naturality.hpp"

#include <algorithm>
#include <stdexcept>

#include "orthsig/rat_matrix.hpp"

namespace orthsig {

bool Pairing::is_noncrossing_caps() const {
  // Caps ansatz: for every arc (i,j), each position strictly inside must be
  // paired with a partner strictly inside. This rules out crossings and
  // unpaired covered nodes at once.
  for (const auto& [i, j] : pairs)
    for (int k = i + 1; k < j; ++k) {
      bool ok = false;
      for (const auto& [a, b] : pairs) {
        if (a == k) ok = (b > i && b < j);
        if (b == k) ok = (a > i && a < j);
        if (a == k || b == k) break;
      }
      if (!ok) return false;
    }
  return true;
}

std::string Pairing::to_string() const {
  std::string s;
  for (const auto& [i, j] : pairs) s += "{" + std::to_string(i) + "," + std::to_string(j) + "}";
  for (int k : singletons) s += "{" + std::to_string(k) + "}";
  return s.empty() ? "{}" : s;
}

bool Pairing::operator<(const Pairing& o) const {
  if (pairs.size() != o.pairs.size()) return pairs.size() < o.pairs.size();
  return pairs < o.pairs;
}

namespace {

void enumerate_pairings(int n, std::vector<int>& unused, Pairing& current, std::vector<Pairing>& out) {
  if (unused.empty()) {
    Pairing p = current;
    std::sort(p.pairs.begin(), p.pairs.end());
    std::sort(p.singletons.begin(), p.singletons.end());
    out.push_back(std::move(p));
    return;
  }
  const int first = unused.front();
  // first stays a singleton
  {
    std::vector<int> rest(unused.begin() + 1, unused.end());
    current.singletons.push_back(first);
    enumerate_pairings(n, rest, current, out);
    current.singletons.pop_back();
  }
  // first pairs with a later element
  for (std::size_t t = 1; t < unused.size(); ++t) {
    std::vector<int> rest;
    for (std::size_t s = 1; s < unused.size(); ++s)
      if (s != t) rest.push_back(unused[s]);
    current.pairs.emplace_back(first, unused[t]);
    enumerate_pairings(n, rest, current, out);
    current.pairs.pop_back();
  }
}

}  // namespace

std::vector<Pairing> pairings(int n) {
  if (n < 0) throw std::invalid_argument("pairings: n >= 0");
  std::vector<int> all;
  for (int i = 1; i <= n; ++i) all.push_back(i);
  std::vector<Pairing> out;
  Pairing current;
  enumerate_pairings(n, all, current, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t involution_number(int n) {
  std::uint64_t a = 1, b = 1;  // I(0), I(1)
  if (n == 0) return 1;
  for (int k = 2; k <= n; ++k) {
    std::uint64_t c = b + static_cast<std::uint64_t>(k - 1) * a;
    a = b;
    b = c;
  }
  return b;
}

DeltaPoly esig_generic(const std::vector<int>& symbols, const DeltaMonomial& prefactor) {
  DeltaPoly out;
  if (symbols.size() % 2 != 0) return out;  // odd length pairs to zero
  const std::size_t m = symbols.size() / 2;
  DeltaMonomial mono = prefactor;
  for (std::size_t i = 0; i < m; ++i) {
    int a = symbols[2 * i], b = symbols[2 * i + 1];
    if (a > b) std::swap(a, b);
    mono.emplace_back(a, b);
  }
  std::sort(mono.begin(), mono.end());
  const Rat coeff = Rat(1) / (rat_pow(2, m) * rat_factorial(m));
  out[DeltaTerm{std::move(mono), {}}] = coeff;
  return out;
}

namespace {

// Adds to out every interleaving of u and v, keeping both orders, together
// with the generic expected-signature monomial it produces.
void accumulate_shuffled_esig(const std::vector<int>& u, const std::vector<int>& v,
                              const DeltaMonomial& prefactor, const Rat& scale,
                              std::map<DeltaMonomial, Rat>& out) {
  const std::size_t total = u.size() + v.size();
  if (total % 2 != 0) return;
  std::vector<bool> pick(total, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(u.size()), true);
  std::sort(pick.begin(), pick.end());
  const std::size_t m = total / 2;
  const Rat coeff = scale / (rat_pow(2, m) * rat_factorial(m));
  std::vector<int> merged(total);
  do {
    std::size_t iu = 0, iv = 0, pos = 0;
    for (bool from_u : pick) merged[pos++] = from_u ? u[iu++] : v[iv++];
    DeltaMonomial mono = prefactor;
    mono.reserve(prefactor.size() + m);
    for (std::size_t i = 0; i < m; ++i) {
      int a = merged[2 * i], b = merged[2 * i + 1];
      if (a > b) std::swap(a, b);
      mono.emplace_back(a, b);
    }
    std::sort(mono.begin(), mono.end());
    auto [it, inserted] = out.emplace(std::move(mono), coeff);
    if (!inserted) it->second += coeff;
  } while (std::next_permutation(pick.begin(), pick.end()));
}

}  // namespace

AnsatzSystem build_system(int n, bool noncrossing_only) {
  if (n < 2) throw std::invalid_argument("build_system: n >= 2");
  AnsatzSystem sys;
  sys.degree = n;
  sys.noncrossing_only = noncrossing_only;

  std::vector<Pairing> all = pairings(n);
  Pairing identity;
  for (int i = 1; i <= n; ++i) identity.singletons.push_back(i);
  for (auto& p : all) {
    if (p.is_identity()) continue;
    if (noncrossing_only && !p.is_noncrossing_caps()) continue;
    sys.variables.push_back(std::move(p));
  }

  // Constraint rows keyed by (test length, delta monomial). The row value
  // collects coefficients per variable plus the identity contribution.
  struct Accum {
    std::map<std::size_t, Rat> coeffs;
    Rat ident = 0;
  };
  std::map<std::pair<int, DeltaMonomial>, Accum> rows;

  auto process_pairing = [&](const Pairing& p, std::optional<std::size_t> var_index) {
    DeltaMonomial prefactor;
    for (const auto& [i, j] : p.pairs) prefactor.emplace_back(i, j);
    std::sort(prefactor.begin(), prefactor.end());
    for (int l = (n % 2 == 0) ? 0 : 1; l <= n - 2; l += 2) {
      std::vector<int> test;
      for (int s = 0; s < l; ++s) test.push_back(n + 1 + s);
      std::map<DeltaMonomial, Rat> acc;
      accumulate_shuffled_esig(p.singletons, test, prefactor, 1, acc);
      for (auto& [mono, c] : acc) {
        Accum& row = rows[{l, mono}];
        if (var_index.has_value()) {
          auto [it, inserted] = row.coeffs.emplace(*var_index, c);
          if (!inserted) it->second += c;
        } else {
          row.ident += c;
        }
      }
    }
  };

  process_pairing(identity, std::nullopt);
  for (std::size_t v = 0; v < sys.variables.size(); ++v) process_pairing(sys.variables[v], v);

  for (auto& [key, accum] : rows) {
    AnsatzSystem::Row row;
    row.test_len = key.first;
    row.monomial = key.second;
    for (auto it = accum.coeffs.begin(); it != accum.coeffs.end();) {
      if (it->second == 0)
        it = accum.coeffs.erase(it);
      else
        ++it;
    }
    if (accum.coeffs.empty() && accum.ident == 0) continue;
    row.coeffs = std::move(accum.coeffs);
    row.rhs = -accum.ident;  // sum_P a_P c_P = -ident
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

namespace {

std::vector<Rat> dense_row(const AnsatzSystem::Row& row, std::size_t vars, bool augmented) {
  std::vector<Rat> out(vars + (augmented ? 1 : 0));
  for (const auto& [idx, c] : row.coeffs) out[idx] = c;
  if (augmented) out[vars] = row.rhs;
  return out;
}

// True when the subsystem given by row indices is inconsistent.
bool subsystem_inconsistent(const AnsatzSystem& sys, const std::vector<std::size_t>& subset) {
  const std::size_t vars = sys.variables.size();
  RowEchelon a(vars), aug(vars + 1);
  for (std::size_t idx : subset) {
    a.add_row(dense_row(sys.rows[idx], vars, false));
    aug.add_row(dense_row(sys.rows[idx], vars, true));
  }
  return aug.rank() > a.rank();
}

}  // namespace

RankReport rank_certify(const AnsatzSystem& sys) {
  RankReport report;
  const std::size_t vars = sys.variables.size();
  report.variables = vars;

  RowEchelon ech_a(vars);
  RowEchelon ech_aug(vars + 1, /*track_combinations=*/true);
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    ech_a.add_row(dense_row(sys.rows[i], vars, false));
    ech_aug.add_row(dense_row(sys.rows[i], vars, true), i);
    // Both ranks are maximal: nothing further can change.
    if (ech_a.rank() == vars && ech_aug.rank() == vars + 1) break;
  }
  report.rank_A = ech_a.rank();
  report.rank_aug = ech_aug.rank();
  report.consistent = (report.rank_A == report.rank_aug);
  report.unique = report.consistent && report.rank_A == vars;

  if (report.consistent) {
    std::vector<Rat> x(vars, 0);
    std::vector<const RowEchelon::StoredRow*> rows;
    for (const auto& r : ech_aug.rows()) rows.push_back(&r);
    std::sort(rows.begin(), rows.end(),
              [](const auto* a, const auto* b) { return a->pivot_col > b->pivot_col; });
    for (const auto* r : rows) {
      Rat rhs = r->values[vars];
      for (std::size_t j = r->pivot_col + 1; j < vars; ++j)
        if (r->values[j] != 0) rhs -= r->values[j] * x[j];
      x[r->pivot_col] = rhs / r->values[r->pivot_col];
    }
    report.solution = std::move(x);
    return report;
  }

  // Farkas certificate: the echelon row pivoting on the constant column is a
  // combination y of original rows with y^T A = 0, y^T b != 0. Its support
  // is then shrunk to an irreducible infeasible subset, dropping rows with
  // many nonzeros first so the surviving witness stays small and readable.
  std::vector<std::size_t> support;
  for (const auto& stored : ech_aug.rows())
    if (stored.pivot_col == vars) {
      for (const auto& [idx, c] : stored.combination) support.push_back(idx);
      break;
    }
  if (support.empty()) throw std::logic_error("rank_certify: inconsistent without witness row");

  std::vector<std::size_t> order = support;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto na = sys.rows[a].coeffs.size(), nb = sys.rows[b].coeffs.size();
    if (na != nb) return na > nb;  // try to drop dense rows first
    return a < b;
  });
  std::vector<std::size_t> keep = support;
  for (std::size_t candidate : order) {
    std::vector<std::size_t> trial;
    for (std::size_t idx : keep)
      if (idx != candidate) trial.push_back(idx);
    if (subsystem_inconsistent(sys, trial)) keep = std::move(trial);
  }

  // On small systems, upgrade to a minimum-cardinality witness (first in
  // lexicographic row order among sizes 2 and 3).
  if (sys.rows.size() <= 100 && keep.size() > 2) {
    bool found = false;
    for (std::size_t i = 0; i < sys.rows.size() && !found; ++i)
      for (std::size_t j = i + 1; j < sys.rows.size() && !found; ++j)
        if (subsystem_inconsistent(sys, {i, j})) {
          keep = {i, j};
          found = true;
        }
    if (!found && keep.size() > 3)
      for (std::size_t i = 0; i < sys.rows.size() && !found; ++i)
        for (std::size_t j = i + 1; j < sys.rows.size() && !found; ++j)
          for (std::size_t k = j + 1; k < sys.rows.size() && !found; ++k)
            if (subsystem_inconsistent(sys, {i, j, k})) {
              keep = {i, j, k};
              found = true;
            }
  }

  // Recover y on the surviving rows: solve y^T [A|b] = (0,...,0,1).
  RatMatrix at(vars + 1, keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c) {
    const auto dr = dense_row(sys.rows[keep[c]], vars, true);
    for (std::size_t r = 0; r <= vars; ++r) at.at(r, c) = dr[r];
  }
  std::vector<Rat> target(vars + 1, 0);
  target[vars] = 1;
  auto y = at.solve_consistent(target);
  if (!y.has_value()) throw std::logic_error("rank_certify: certificate solve failed");
  for (std::size_t c = 0; c < keep.size(); ++c)
    if ((*y)[c] != 0) report.certificate.emplace_back(keep[c], (*y)[c]);
  return report;
}

TensorPoly evaluate_ansatz(const AnsatzSystem& sys, const std::vector<Rat>& solution, const Word& w) {
  if (static_cast<int>(w.tensor_degree()) != sys.degree)
    throw std::invalid_argument("evaluate_ansatz: word degree mismatch");
  if (solution.size() != sys.variables.size())
    throw std::invalid_argument("evaluate_ansatz: solution size mismatch");
  TensorPoly out(w);  // identity pairing with coefficient 1
  for (std::size_t v = 0; v < sys.variables.size(); ++v) {
    if (solution[v] == 0) continue;
    const Pairing& p = sys.variables[v];
    bool vanished = false;
    for (const auto& [i, j] : p.pairs)
      if (w[static_cast<std::size_t>(i - 1)] != w[static_cast<std::size_t>(j - 1)]) {
        vanished = true;
        break;
      }
    if (vanished) continue;
    std::vector<Letter> rest;
    for (int k : p.singletons) rest.push_back(w[static_cast<std::size_t>(k - 1)]);
    out.add_term(Word(std::move(rest)), solution[v]);
  }
  return out;
}

}  // namespace orthsig
