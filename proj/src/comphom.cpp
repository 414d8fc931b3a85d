#include "fintop/comphom.hpp"

#include <algorithm>

#include "fintop/error.hpp"

namespace fintop {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

void check_shape(const std::vector<RationalVector>& rows, int n) {
  if (n < 0 || n > kSubsetCapacity) throw ValidationError("column count out of range");
  for (const RationalVector& r : rows) {
    if (static_cast<int>(r.size()) != n) throw ValidationError("matrix rows must all have length " + std::to_string(n));
  }
}

int rank(std::vector<RationalVector> rows, int n) {
  int r = 0;
  for (int c = 0; c < n && r < static_cast<int>(rows.size()); ++c) {
    std::size_t piv = rows.size();
    for (std::size_t i = at(r); i < rows.size(); ++i) {
      if (sgn(rows[i][at(c)]) != 0) {
        piv = i;
        break;
      }
    }
    if (piv == rows.size()) continue;
    std::swap(rows[at(r)], rows[piv]);
    for (std::size_t i = at(r) + 1; i < rows.size(); ++i) {
      if (sgn(rows[i][at(c)]) == 0) continue;
      const Rational f = rows[i][at(c)] / rows[at(r)][at(c)];
      for (int k = c; k < n; ++k) rows[i][at(k)] -= f * rows[at(r)][at(k)];
    }
    ++r;
  }
  return r;
}

// {f : R f = 0} is spanned by unit vectors exactly when its dimension equals
// the number of zero columns of R.
bool kernel_is_coordinate(const std::vector<RationalVector>& r, int n) {
  int zero_columns = 0;
  for (int c = 0; c < n; ++c) {
    bool zero = true;
    for (const RationalVector& row : r) zero = zero && sgn(row[at(c)]) == 0;
    zero_columns += zero ? 1 : 0;
  }
  return n - rank(r, n) == zero_columns;
}

RationalVector unit(int n, int j) {
  RationalVector v(at(n), Rational(0));
  v[at(j)] = 1;
  return v;
}

RationalVector indicator(int n, Subset s) {
  RationalVector v(at(n), Rational(0));
  s.for_each([&](int j) { v[at(j)] = 1; });
  return v;
}

// Calls fn on every vector of {-1,0,1}^n.
template <class Fn>
void for_each_sign_vector(int n, Fn&& fn) {
  std::vector<int> digits(at(n), -1);
  RationalVector f(at(n));
  while (true) {
    for (int i = 0; i < n; ++i) f[at(i)] = digits[at(i)];
    fn(f);
    int i = 0;
    while (i < n && digits[at(i)] == 1) digits[at(i++)] = -1;
    if (i == n) return;
    ++digits[at(i)];
  }
}

}  // namespace

bool is_homomorphism(const std::vector<RationalVector>& rows, int n) {
  check_shape(rows, n);
  for (const RationalVector& r : rows) {
    int nonzero = 0;
    for (const Rational& q : r) {
      if (sgn(q) < 0) return false;
      nonzero += sgn(q) != 0 ? 1 : 0;
    }
    if (nonzero > 1) return false;
  }
  return true;
}

bool is_homomorphism_by_absolute_values(const std::vector<RationalVector>& rows, int n) {
  check_shape(rows, n);
  bool ok = true;
  Rational tf;
  Rational t_abs;
  for_each_sign_vector(n, [&](const RationalVector& f) {
    for (const RationalVector& r : rows) {
      if (!ok) return;
      tf = 0;
      t_abs = 0;
      for (int c = 0; c < n; ++c) {
        tf += r[at(c)] * f[at(c)];
        t_abs += r[at(c)] * abs(f[at(c)]);
      }
      if (abs(tf) != t_abs) ok = false;
    }
  });
  return ok;
}

HomMatrix::HomMatrix(std::vector<RationalVector> rows, int n) : rows_(std::move(rows)), n_(n) {
  if (!is_homomorphism(rows_, n_)) {
    throw ValidationError("matrix is not a lattice homomorphism (rows must be monomial and nonnegative)");
  }
  if (n_ <= 8 && !is_homomorphism_by_absolute_values(rows_, n_)) {
    throw Error("structural and definitional homomorphism tests disagree");
  }
}

RationalVector HomMatrix::apply(const RationalVector& f) const {
  if (static_cast<int>(f.size()) != n_) throw ValidationError("vector length does not match the matrix");
  RationalVector out(rows_.size(), Rational(0));
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (int c = 0; c < n_; ++c) out[i] += rows_[i][at(c)] * f[at(c)];
  }
  return out;
}

NormalForm normal_form(const HomMatrix& t) {
  NormalForm nf;
  for (const RationalVector& r : t.matrix()) {
    const auto it = std::find_if(r.begin(), r.end(), [](const Rational& q) { return sgn(q) != 0; });
    if (it == r.end()) {
      nf.weights.emplace_back(0);
      nf.phi.push_back(-1);
    } else {
      nf.weights.push_back(*it);
      nf.phi.push_back(static_cast<int>(it - r.begin()));
    }
  }
  return nf;
}

HomMatrix reassemble(const NormalForm& nf, int n) {
  if (nf.weights.size() != nf.phi.size()) throw ValidationError("weights and phi differ in length");
  std::vector<RationalVector> rows;
  for (std::size_t i = 0; i < nf.phi.size(); ++i) {
    RationalVector r(at(n), Rational(0));
    if (nf.phi[i] >= 0) {
      if (nf.phi[i] >= n) throw ValidationError("phi value out of range");
      r[at(nf.phi[i])] = nf.weights[i];
    } else if (sgn(nf.weights[i]) != 0) {
      throw ValidationError("undefined phi needs weight 0");
    }
    rows.push_back(std::move(r));
  }
  return HomMatrix(std::move(rows), n);
}

bool hoc_order_continuous(const HomMatrix& t) {
  const int n = t.cols();
  for (Subset b : subsets_of(Subset::full(n))) {
    // T f_k = Ta + Tb/k decreases to Ta iff Tb >= 0.
    for (const Rational& q : t.apply(indicator(n, b))) {
      if (sgn(q) < 0) return false;
    }
  }
  return true;
}

bool hoc_preserves_suprema(const HomMatrix& t) {
  const int n = t.cols();
  std::vector<RationalVector> test;
  for_each_sign_vector(n, [&](const RationalVector& f) { test.push_back(f); });
  for (std::size_t i = 0; i < test.size(); ++i) {
    for (std::size_t j = i; j < test.size(); ++j) {
      RationalVector sup(at(n));
      for (int c = 0; c < n; ++c) sup[at(c)] = std::max(test[i][at(c)], test[j][at(c)]);
      const RationalVector t_sup = t.apply(sup);
      // {f, g, f v g} is the directed closure; its image's supremum is taken
      // coordinatewise in R^m.
      const RationalVector a = t.apply(test[i]);
      const RationalVector b = t.apply(test[j]);
      for (std::size_t r = 0; r < t_sup.size(); ++r) {
        if (std::max({a[r], b[r], t_sup[r]}) != t_sup[r]) return false;
        if (a[r] != t_sup[r] && b[r] != t_sup[r]) return false;
      }
    }
  }
  return true;
}

bool hoc_kernel_band(const HomMatrix& t) {
  if (!kernel_is_coordinate(t.matrix(), t.cols())) return false;
  std::vector<RationalVector> columns;
  for (int c = 0; c < t.cols(); ++c) columns.push_back(t.apply(unit(t.cols(), c)));
  const ConstraintSystem image = canonical_form(t.rows(), columns);
  return classify_sublattice(ConstraintSystem::full(t.rows()), image).regular;
}

bool hoc_preimage_bands(const HomMatrix& t) {
  for (Subset b : subsets_of(Subset::full(t.rows()))) {
    std::vector<RationalVector> selected;
    b.for_each([&](int i) { selected.push_back(t.matrix()[at(i)]); });
    if (!kernel_is_coordinate(selected, t.cols())) return false;
  }
  return true;
}

bool hoc_bidual_inclusion(const HomMatrix& t) {
  const int n = t.cols();
  const int m = t.rows();
  const ConstraintSystem f_full = ConstraintSystem::full(n);
  const ConstraintSystem e_full = ConstraintSystem::full(m);
  for (Subset a : subsets_of(Subset::full(n))) {
    const ConstraintSystem g = zero_ideal(f_full, a);
    const ConstraintSystem gdd = disjoint_complement(f_full, basis(disjoint_complement(f_full, basis(g))));
    std::vector<RationalVector> tg;
    for (const RationalVector& v : basis(g)) tg.push_back(t.apply(v));
    const ConstraintSystem tgdd = disjoint_complement(e_full, basis(disjoint_complement(e_full, tg)));
    for (const RationalVector& v : basis(gdd)) {
      if (!member(tgdd, t.apply(v))) return false;
    }
  }
  return true;
}

HocReport hoc_conditions(const HomMatrix& t) {
  HocReport r;
  r.order_continuous = hoc_order_continuous(t);
  r.preserves_suprema = hoc_preserves_suprema(t);
  r.kernel_band = hoc_kernel_band(t);
  r.preimage_bands = hoc_preimage_bands(t);
  r.bidual_inclusion = hoc_bidual_inclusion(t);
  return r;
}

ConstraintSystem pull_back(const ContMap& phi, const ConstraintSystem& e) {
  const int nx = phi.domain().size();
  if (e.size() != phi.codomain().size()) throw ValidationError("lattice size does not match the codomain");
  std::vector<RationalVector> pulled;
  for (const RationalVector& a : basis(e)) {
    RationalVector f(at(nx));
    for (int x = 0; x < nx; ++x) f[at(x)] = a[at(phi(x))];
    pulled.push_back(std::move(f));
  }
  return canonical_form(nx, pulled);
}

bool CertificateReport::agrees() const {
  return std::all_of(certificates.begin(), certificates.end(), [](const Certificate& c) { return c.agrees(); });
}

CertificateReport certify_composition(const ContMap& phi, const ConstraintSystem& e) {
  const FinSpace& x = phi.domain();
  const FinSpace& y = phi.codomain();
  if (e.size() != y.size()) throw ValidationError("lattice size does not match the codomain");
  CertificateReport report;
  report.discrete = x.is_discrete() && y.is_discrete();
  if (report.discrete) {
    const SublatticeFlags ef = classify_sublattice(ConstraintSystem::full(y.size()), e);
    if (!ef.order_dense || !ef.urysohn) throw ValidationError("lattice is not an order dense Urysohn sublattice");
  } else if (!(e == ConstraintSystem::full(y.size()))) {
    throw ValidationError("on non-discrete spaces only the full lattice is supported");
  }
  report.classification = classify_map(phi);
  const MapClassification& c = report.classification;
  report.certificates = {
      {"order_dense", "irreducible", c.is(MapClass::Irreducible), false, false},
      {"weakly_urysohn", "irreducible", c.is(MapClass::Irreducible), false, false},
      {"urysohn", "embedding", c.is(MapClass::Embedding), false, false},
      {"order_continuous", "almost_open", c.is(MapClass::AlmostOpen), false, false},
      {"regular", "skeletal", c.is(MapClass::Skeletal), false, false},
  };
  if (!report.discrete) return report;

  const ConstraintSystem pulled = pull_back(phi, e);
  const SublatticeFlags lf = classify_sublattice(ConstraintSystem::full(x.size()), pulled);
  // C_phi on E in the atom basis of E: row x reads the atom containing phi(x).
  const std::vector<int> reps = e.representatives();
  std::vector<RationalVector> rows;
  for (int p = 0; p < x.size(); ++p) {
    RationalVector r(reps.size(), Rational(0));
    const int q = phi(p);
    if (!e.zeros().contains(q)) {
      const auto it = std::find(reps.begin(), reps.end(), e.rep(q));
      r[static_cast<std::size_t>(it - reps.begin())] = e.ratio(q);
    }
    rows.push_back(std::move(r));
  }
  const bool continuous = hoc_order_continuous(HomMatrix(std::move(rows), static_cast<int>(reps.size())));
  const bool direct[] = {lf.order_dense, lf.weakly_urysohn, lf.urysohn, continuous, lf.regular};
  for (std::size_t i = 0; i < report.certificates.size(); ++i) {
    report.certificates[i].direct_available = true;
    report.certificates[i].direct = direct[i];
  }
  return report;
}

}  // namespace fintop
