#include "orthsig/tensor_poly.hpp"

namespace orthsig {

Rat TensorPoly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rat(0) : it->second;
}

std::size_t TensorPoly::max_degree() const {
  if (terms_.empty()) return 0;
  return terms_.rbegin()->first.tensor_degree();
}

void TensorPoly::add_term(const Word& w, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TensorPoly& TensorPoly::operator+=(const TensorPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

TensorPoly& TensorPoly::operator-=(const TensorPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

TensorPoly& TensorPoly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

std::string TensorPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    Rat a = c;
    if (first) {
      if (a < 0) {
        s += "-";
        a = -a;
      }
    } else {
      s += (a < 0) ? " - " : " + ";
      if (a < 0) a = -a;
    }
    std::string word = w.empty() ? "()" : w.to_string();
    if (a == 1)
      s += word;
    else
      s += rat_to_string(a) + "*" + word;
    first = false;
  }
  return s;
}

namespace {

// Appends letter a to every term of p.
TensorPoly append_all(const TensorPoly& p, Letter a) {
  TensorPoly out;
  for (const auto& [w, c] : p.terms()) out.add_term(w.append(a), c);
  return out;
}

TensorPoly shuffle_rec(const Word& u, const Word& v) {
  if (u.empty()) return TensorPoly(v);
  if (v.empty()) return TensorPoly(u);
  const Letter a = u.back();
  const Letter b = v.back();
  const Word u1 = u.prefix(u.tensor_degree() - 1);
  const Word v1 = v.prefix(v.tensor_degree() - 1);
  TensorPoly out = append_all(shuffle_rec(u1, v), a);
  out += append_all(shuffle_rec(u, v1), b);
  return out;
}

TensorPoly qshuffle_rec(const Word& u, const Word& v) {
  if (u.empty()) return TensorPoly(v);
  if (v.empty()) return TensorPoly(u);
  const Letter a = u.back();
  const Letter b = v.back();
  const Word u1 = u.prefix(u.tensor_degree() - 1);
  const Word v1 = v.prefix(v.tensor_degree() - 1);
  TensorPoly out = append_all(qshuffle_rec(u1, v), a);
  out += append_all(qshuffle_rec(u, v1), b);
  if (a == b && a != 0) out += append_all(qshuffle_rec(u1, v1), 0);
  return out;
}

}  // namespace

TensorPoly shuffle(const Word& u, const Word& v) { return shuffle_rec(u, v); }

TensorPoly shuffle(const TensorPoly& u, const TensorPoly& v) {
  TensorPoly out;
  for (const auto& [uw, uc] : u.terms())
    for (const auto& [vw, vc] : v.terms()) {
      TensorPoly s = shuffle_rec(uw, vw);
      s *= uc * vc;
      out += s;
    }
  return out;
}

TensorPoly quasi_shuffle(const Word& u, const Word& v) { return qshuffle_rec(u, v); }

TensorPoly quasi_shuffle(const TensorPoly& u, const TensorPoly& v) {
  TensorPoly out;
  for (const auto& [uw, uc] : u.terms())
    for (const auto& [vw, vc] : v.terms()) {
      TensorPoly s = qshuffle_rec(uw, vw);
      s *= uc * vc;
      out += s;
    }
  return out;
}

TensorPoly concat(const TensorPoly& u, const TensorPoly& v) {
  TensorPoly out;
  for (const auto& [uw, uc] : u.terms())
    for (const auto& [vw, vc] : v.terms()) out.add_term(concat(uw, vw), uc * vc);
  return out;
}

}  // namespace orthsig
