#pragma once

#include <string>
#include <vector>

#include "fintop/contmap.hpp"
#include "fintop/funclat.hpp"

namespace fintop {

/// Structural test: every row has at most one nonzero entry and it is
/// positive. Rows must all have length n.
bool is_homomorphism(const std::vector<RationalVector>& rows, int n);

/// Definitional test |Tf| = T|f|, evaluated for f over {-1,0,1}^n. Two
/// coordinates of a row already fail on one of these when the row is not
/// monomial and positive, so the finite set is enough.
bool is_homomorphism_by_absolute_values(const std::vector<RationalVector>& rows, int n);

/// A lattice homomorphism R^n -> R^m given by its m x n matrix.
class HomMatrix {
public:
  HomMatrix() = default;
  /// Throws ValidationError when the matrix is ragged or not a homomorphism.
  HomMatrix(std::vector<RationalVector> rows, int n);

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return n_; }
  const std::vector<RationalVector>& matrix() const { return rows_; }
  const Rational& entry(int i, int j) const { return rows_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

  RationalVector apply(const RationalVector& f) const;

  bool operator==(const HomMatrix&) const = default;

private:
  std::vector<RationalVector> rows_;
  int n_ = 0;
};

/// T = M_weights C_phi: row i reads column phi[i] scaled by weights[i].
/// phi[i] = -1 (and weight 0) for zero rows.
struct NormalForm {
  RationalVector weights;
  std::vector<int> phi;

  bool operator==(const NormalForm&) const = default;
};

NormalForm normal_form(const HomMatrix& t);
HomMatrix reassemble(const NormalForm& nf, int n);

/// The five order-continuity conditions, each decided by its own procedure.
struct HocReport {
  bool order_continuous = false;   // (i)
  bool preserves_suprema = false;  // (ii)
  bool kernel_band = false;        // (iii)
  bool preimage_bands = false;     // (iv)
  bool bidual_inclusion = false;   // (v)

  bool all() const {
    return order_continuous && preserves_suprema && kernel_band && preimage_bands && bidual_inclusion;
  }
  bool operator==(const HocReport&) const = default;
};

/// (i) f_k = a + b/k decreasing to a maps to a sequence decreasing to Ta,
///     for b over {0,1}^n.
bool hoc_order_continuous(const HomMatrix& t);
/// (ii) T sup G = sup TG for the upward-directed closures of all pairs G of
///      vectors in {-1,0,1}^n.
bool hoc_preserves_suprema(const HomMatrix& t);
/// (iii) Ker T is a coordinate subspace and TF is regular in R^m.
bool hoc_kernel_band(const HomMatrix& t);
/// (iv) T^-1 H is a coordinate subspace for every coordinate subspace H of R^m.
bool hoc_preimage_bands(const HomMatrix& t);
/// (v) T(G^dd) is inside (TG)^dd for every ideal G = E_A of R^n.
bool hoc_bidual_inclusion(const HomMatrix& t);

HocReport hoc_conditions(const HomMatrix& t);

/// One conclusion licensed by a topological certificate, with the
/// lattice-side verdict computed directly when the spaces are discrete.
struct Certificate {
  std::string property;     // e.g. "order_dense"
  std::string certificate;  // e.g. "irreducible"
  bool value = false;
  bool direct_available = false;
  bool direct = false;

  bool agrees() const { return !direct_available || direct == value; }
};

struct CertificateReport {
  MapClassification classification;
  /// order_dense <- irreducible, weakly_urysohn <- irreducible,
  /// urysohn <- embedding, order_continuous <- almost_open,
  /// regular <- skeletal.
  std::vector<Certificate> certificates;
  bool discrete = false;

  bool agrees() const;
};

/// Certificates for C_phi E with e a sublattice of functions on the
/// codomain's points. On discrete spaces e must be an order dense Urysohn
/// sublattice and the pulled-back lattice is classified directly. On other
/// spaces e must be the full lattice and only certificates are reported.
/// Throws ValidationError on a precondition violation.
CertificateReport certify_composition(const ContMap& phi, const ConstraintSystem& e);

/// C_phi E as a constraint system over the domain points.
ConstraintSystem pull_back(const ContMap& phi, const ConstraintSystem& e);

}  // namespace fintop
