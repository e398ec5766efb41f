#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rbc/group.hpp"

namespace rbc {

/// Conjugacy class data for GL(3,q) from rational canonical forms.  The
/// group is never enumerated; class representatives, sizes and centralizer
/// orders come from the classical similarity-class formulas, and membership
/// is decided by characteristic-polynomial factorization plus rank.
class Gl3Classes {
public:
    struct Cls {
        Mat rep;
        uint64_t size;
        uint64_t centralizer;
        // 1 scalar, 2 J2+J1 (one eigenvalue), 3 J3, 4 diag(a,a,b),
        // 5 J2(a)+b, 6 diag distinct, 7 irred quadratic + linear, 8 irred cubic
        int type;
        std::string label;
    };

    explicit Gl3Classes(int q);

    int q() const { return q_; }
    uint64_t order() const { return order_; }
    const std::vector<Cls>& classes() const { return classes_; }

    /// Class index of an arbitrary invertible matrix.
    uint32_t classify(const Mat& m) const;

private:
    int q_;
    const Fq* F_;
    uint64_t order_;
    std::vector<Cls> classes_;
    std::vector<int64_t> lookup_; // dense key -> class index
    int64_t lookup_key(int type, int p1, int p2, int p3) const;
};

const Gl3Classes& gl3_classes(int q);

/// The (2,1) block parabolic stabilizing span(e0, e2), Levi = corner GL2 x
/// middle GL1, unipotent radical at the (0,1) and (2,1) slots.
GroupPtr build_gl3_parabolic(int q);

} // namespace rbc
