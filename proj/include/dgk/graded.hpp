#pragma once

#include <memory>
#include <mutex>

#include "dgk/linalg.hpp"
#include "dgk/presentation.hpp"

namespace dgk {

/* Basis of one degree slice of T(gens)/(relations): the reduced words are a
   complement of the ideal slice inside the full word space, and nf reduces
   arbitrary degree-n words into their span. */
struct DegreeBasis {
    int degree = 0;
    std::vector<Word> words;  /* reduced words, length-lex order */
    std::map<Word, int> index;

    bool free_slice = true;   /* ideal slice is zero at this degree */
    std::vector<Word> all_words;
    std::map<Word, int> all_index;
    std::vector<SVec> ideal_rows;   /* rref rows over all_words coords */
    std::map<int, int> pivot_row;   /* all_words id of pivot -> row */
    std::vector<int> reduced_pos;   /* all_words id -> reduced index or -1 */

    int dim() const { return (int)words.size(); }
};

/* element of a fixed degree slice, coordinates over DegreeBasis::words */
struct Element {
    int degree = 0;
    SVec c;

    bool is_zero() const { return c.empty(); }
};

/* Degreewise realization of a presented connected graded algebra. Ideal
   slices are handled by plain linear algebra per degree; all bases are
   deterministic (length-lex word order, first-nonzero pivoting). */
class GradedAlgebra {
  public:
    explicit GradedAlgebra(Presentation p);

    const Presentation& pres() const { return pres_; }
    const Field& field() const { return pres_.field; }
    int trunc() const { return pres_.truncation_degree; }

    const DegreeBasis& basis(int n) const; /* DegreeOutOfRange outside [0, D] */
    int dim(int n) const { return basis(n).dim(); }
    std::vector<int> hilbert(int dmax) const;

    Element zero(int degree) const { return Element{degree, {}}; }
    Element unit() const;
    Element basis_element(int degree, int i) const;
    Element reduce_word(const Word& w) const;
    /* homogeneous polynomial -> coordinates (DegreeOutOfRange above D) */
    Element reduce_poly(const NCPoly& p) const;
    NCPoly poly_of(const Element& e) const;
    std::string to_string(const Element& e) const;

    Element add(const Element& a, const Element& b) const;
    Element scaled(const Element& a, const Scalar& s) const;
    Element multiply(const Element& a, const Element& b) const;

    /* the degree-n slice of the two-sided ideal, inside all_words coords */
    Subspace ideal_slice(int n) const;
    /* count of all degree-n words of the tensor algebra */
    long word_count(int n) const;

  private:
    DegreeBasis build_basis(int n) const;

    Presentation pres_;
    mutable std::mutex mu_;
    mutable std::map<int, DegreeBasis> bases_;
};

std::vector<Word> enumerate_words(const Presentation& p, int degree);

} // namespace dgk
