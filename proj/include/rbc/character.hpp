#pragma once

#include <cstdint>
#include <vector>

#include "rbc/cyclotomic.hpp"
#include "rbc/group.hpp"

namespace rbc {

/// Class function on a group, values indexed by the class list (ordinary or
/// twisted, matching the flag).
struct Character {
    const Group* G = nullptr;
    bool twisted = false;
    std::vector<Cyc> vals;

    Cyc degree() const;
    long long degree_int() const;
};

struct CharTable {
    const Group* G = nullptr;
    std::vector<Character> irr;
};

struct TableLimits {
    uint64_t max_order = 50000;
    uint32_t max_classes = 300;
};

/// Thrown when a group exceeds the Dixon gates; callers fall back to
/// targeted induced characters.
struct TooLargeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Complete exact character table.  Dispatch: cyclic groups directly,
/// tagged direct products by tensoring the factor tables, everything else
/// through Burnside-Dixon-Schneider over a prime splitting field with exact
/// cyclotomic lifting.  Irreducibles are ordered by (degree, value vector).
CharTable char_table(const Group& g, const TableLimits& lim = {});

/// Exact inner product (1/|G|) sum |C| a(C) conj(b(C)).
Cyc inner_product(const Character& a, const Character& b);

/// Induction from a subgroup whose elements share the parent encoding;
/// h_vals are class values on H's class list.
Character induce(const Group& g, const Group& h, const std::vector<Cyc>& h_vals);

/// chi_a x chi_b on a tagged product group.
Character product_character(const Group& g, const CharTable& ta, uint32_t ia,
                            const CharTable& tb, uint32_t ib);

/// Class indices of the two factors of a product-group class.
std::pair<uint32_t, uint32_t> product_class_split(const Group& g, uint32_t cls);

/// Multiplicity decomposition of an arbitrary class function against the
/// table; exact, throws if a coefficient is not a nonnegative integer when
/// require_character is set.
std::vector<std::pair<long long, uint32_t>> decompose(const CharTable& table,
                                                      const std::vector<Cyc>& vals,
                                                      bool require_character = true);

} // namespace rbc
