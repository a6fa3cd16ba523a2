#pragma once

#include "dgk/graded.hpp"

namespace dgk {

/* Finite-dimensional augmented algebra given by structure constants. The
   basis is unit-adapted: basis element 0 is the unit and the augmentation is
   the coordinate functional of the unit (validated to be an algebra map). */
class FinAlgebra {
  public:
    FinAlgebra(Field f, std::vector<std::string> names,
               std::vector<std::vector<SVec>> table);

    /* flatten a graded algebra that is provably finite dimensional inside its
       truncation window (all slices vanish on a run of max-generator-degree
       many degrees); products must stay below the wall */
    static FinAlgebra from_graded(const GradedAlgebra& g);
    /* T(V)/T^{>= nil}(V) on nvars letters */
    static FinAlgebra truncated_tensor(const Field& f, int nvars, int nil);

    const Field& field() const { return field_; }
    int dim() const { return (int)names_.size(); }
    const std::string& name(int i) const { return names_[i]; }
    const SVec& mult(int i, int j) const { return table_[i][j]; }

    SVec unit() const { return {{0, Scalar::one(field_)}}; }
    SVec multiply(const SVec& a, const SVec& b) const;
    Scalar augment(const SVec& a) const { return svec_get(a, 0, field_); }

    /* ker eps as a subspace of k^dim */
    Subspace augmentation_ideal() const;
    /* powers J^0 = E, J^1, ... down to zero; throws NotLocal when ker eps
       fails to be nilpotent */
    std::vector<Subspace> radical_powers() const;
    int nilpotency_index() const { return (int)radical_powers().size() - 1; }
    std::vector<int> radical_layer_dims() const;

    /* left multiplication by a as a matrix on the underlying space */
    SparseMatrix left_mult_matrix(const SVec& a) const;
    SparseMatrix right_mult_matrix(const SVec& a) const;

    /* {a : a J = 0} and {a : J a = 0} */
    Subspace right_socle() const;
    Subspace left_socle() const;

    std::string to_string(const SVec& a) const;

  private:
    Field field_;
    std::vector<std::string> names_;
    std::vector<std::vector<SVec>> table_;
};

/* Minimal free resolution of E/J over a local algebra E, built by syzygies:
   P_n = E^{ranks[n]}, delta_n : P_n -> P_{n-1} (delta_0 = augmentation).
   Underlying-space coordinates: generator block g then algebra index. */
struct LocalResolution {
    const FinAlgebra* e = nullptr;
    std::vector<int> ranks;
    std::vector<SparseMatrix> delta;   /* delta[n] : P_{n+1} -> P_n as linear maps */
    std::vector<Subspace> kernels;     /* ker(delta_n : P_n -> P_{n-1}), n >= 0 */
    bool window_exhausted = false;     /* more stages needed beyond smax */
};

LocalResolution local_minimal_resolution(const FinAlgebra& e, int smax);

/* J^i restricted to the free module E^rank */
Subspace radical_power_module(const FinAlgebra& e, const Subspace& jpow, int rank);
/* span of J^i * (subspace of E^rank) */
Subspace radical_times(const FinAlgebra& e, const Subspace& jpow, const Subspace& v, int rank);

} // namespace dgk
