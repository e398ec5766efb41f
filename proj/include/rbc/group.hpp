#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rbc/finite_field.hpp"

namespace rbc {

/// 3x3 matrix of field-element indices.  Groups of rank < 3 are embedded:
/// 2x2 blocks sit in the corners (rows/columns 0 and 2), matching the
/// explicit realization of the z-vertex quotients, and the (1,1) slot holds
/// the GL(1) factor (or 1).
using Mat = std::array<uint8_t, 9>;

Mat mat_identity();
Mat mat_mul(const Fq& F, const Mat& a, const Mat& b);
Mat mat_inv(const Fq& F, const Mat& a);
int mat_det(const Fq& F, const Mat& a);
Mat mat_transpose(const Mat& a);
std::string mat_str(const Mat& a);

/// Corner embedding helpers.
Mat corner(int a, int b, int c, int d, int mid);
std::array<int, 4> corner_of(const Mat& m);
int middle_of(const Mat& m);

/// Group element: matrix plus the semidirect flag (1 = the outer coset of
/// G><<eps>).  Plain groups keep eps = 0.
struct Elem {
    Mat m;
    uint8_t eps = 0;

    friend bool operator==(const Elem& a, const Elem& b) { return a.m == b.m && a.eps == b.eps; }
};

/// Packs an element into 37 bits; numeric order equals lexicographic order
/// on (entries row-major, eps), which defines all canonical representatives.
uint64_t elem_key(const Elem& e);

/// The automorphisms the construction needs.
struct Aut {
    enum Kind {
        Identity,
        /// g -> Phi (t g)^{-1} Phi^{-1} with Phi the antidiagonal (1,-1,1) form.
        PhiDual,
        /// Corner block A -> A / det A, middle e -> e^{-1}.
        DetQuotInv,
    } kind = Identity;
    int order() const { return kind == Identity ? 1 : 2; }
};

Mat apply_aut(const Fq& F, const Aut& a, const Mat& m);

struct ConjClass {
    uint32_t rep;             ///< element index of the minimal-key member
    uint64_t size;
    uint64_t centralizer;     ///< |G| / size (twisted: |G| / |eps-class|)
    bool twisted = false;
};

/// A finite matrix group with full element enumeration.
class Group {
public:
    std::string name;
    const Fq* F = nullptr;
    int q = 0;
    bool projective = false;   ///< canonical corner rescale after products (PGL style)
    bool semidirect = false;   ///< elements carry the outer eps bit
    Aut eps;                   ///< automorphism used for twisting / the semidirect factor
    bool has_eps = false;

    std::vector<Elem> elems;   ///< sorted by elem_key

    /// Optional direct-product structure (corner x middle) used by the
    /// tensor character-table path and factor-wise twisted characters.
    struct ProductInfo {
        std::shared_ptr<Group> corner_factor; // middle forced to 1
        std::shared_ptr<Group> middle_factor; // corners forced to identity
    };
    std::optional<ProductInfo> product;

    uint64_t order() const { return elems.size(); }

    uint32_t index_of(const Elem& e) const;
    bool contains(const Elem& e) const;
    const Elem& elem(uint32_t i) const { return elems[i]; }
    uint32_t identity_index() const { return id_idx_; }

    Elem mul(const Elem& a, const Elem& b) const;
    Elem inv(const Elem& a) const;
    Elem apply_eps(const Elem& a) const;
    Elem conj(const Elem& x, const Elem& g) const;         // x g x^{-1}
    Elem conj_twisted(const Elem& x, const Elem& g) const; // x g eps(x)^{-1}
    /// Norm map g -> g * eps(g).
    Elem norm_map(const Elem& g) const;

    uint64_t element_order(const Elem& e) const;

    const std::vector<uint32_t>& generators() const;

    const std::vector<ConjClass>& classes() const;
    uint32_t class_of(uint32_t elem_idx) const;
    const std::vector<ConjClass>& twisted_classes() const;
    uint32_t twisted_class_of(uint32_t elem_idx) const;

    std::vector<uint32_t> center() const;

    /// Elements fixed by eps, as a subgroup table (same element encoding).
    std::shared_ptr<Group> fixed_subgroup() const;

    /// Subgroup from an explicit element subset (must be closed).
    std::shared_ptr<Group> subgroup(const std::string& name,
                                    const std::vector<Elem>& elements) const;

    void finalize(); ///< sort, index, identify 1; call after filling elems

private:
    void compute_classes(bool twisted) const;
    void compute_generators() const;

    std::unordered_map<uint64_t, uint32_t> index_;
    uint32_t id_idx_ = 0;

    mutable std::vector<ConjClass> classes_;
    mutable std::vector<uint32_t> class_of_;
    mutable std::vector<ConjClass> tclasses_;
    mutable std::vector<uint32_t> tclass_of_;
    mutable std::vector<uint32_t> gens_;
};

using GroupPtr = std::shared_ptr<Group>;

/// Named constructions.  Supported names: GL1, PM, GL2, SL2, PGL2, GL3,
/// O21, SO21, O2, SO2, GL2xGL1, SL2xPM, GF, TNS (the nonsplit torus l^x
/// inside GL2 with its eps).  GL3 and O21/SO21 are gated to q = 5.
GroupPtr build_group(const std::string& name, int q);

/// G><<eps> for the group's order-2 automorphism.
GroupPtr build_semidirect(const Group& g);

/// Cyclic torus with a fixed generator; elements indexed by power.
struct CyclicTorus {
    enum Kind { SplitM, NonsplitS } kind;
    std::vector<uint32_t> by_power; ///< element indices in the parent group
    long order() const { return long(by_power.size()); }
};

/// Embeddings used throughout: the split diagonal torus and the nonsplit
/// torus labeled by the norm-one group of the quadratic extension.
CyclicTorus embed_split_torus(const Group& g);
CyclicTorus embed_nonsplit_torus(const Group& g);

/// The full l^x inside a corner GL2-type group, labeled by powers of the
/// extension-field generator.
CyclicTorus embed_lx_torus(const Group& g);

/// Image of the ramified cubic torus in a z- or y-type quotient: the
/// unipotent radical of the corresponding Borel subgroup (deterministic
/// element order).
std::vector<Elem> cubic_torus_image(const Group& g);

/// Borel subgroups in the fixed conventions: lower-triangular corner block
/// for z-type groups, upper-triangular matrices for SO21.
std::shared_ptr<Group> borel_subgroup(const Group& g);

} // namespace rbc
