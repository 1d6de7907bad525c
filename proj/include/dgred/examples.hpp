#pragma once

#include "dgred/hamiltonian.hpp"

#include <string>
#include <vector>

namespace dgred {

/// A labeled rational point for the pointwise analyses.
struct LabeledPoint {
    std::string label;
    std::vector<Rational> coords;
};

struct ExampleSpace {
    HamiltonianSpace space;
    std::vector<LabeledPoint> points;
};

inline std::vector<std::string> builtin_example_names() {
    return {"s1_r2", "s1_r2_shifted", "so3_cotangent_r3", "t2_c2", "trivial_group"};
}

namespace detail {

inline RatMat standard_symplectic_pairs(std::size_t pairs) {
    // omega = sum dx_{2k+1} ^ dx_{2k+2} on consecutive coordinate pairs
    RatMat w(2 * pairs, 2 * pairs);
    for (std::size_t k = 0; k < pairs; ++k) {
        w(2 * k, 2 * k + 1) = 1;
        w(2 * k + 1, 2 * k) = -1;
    }
    return w;
}

inline RatMat rotation_generator(std::size_t n, std::size_t plane) {
    // rotation generator in coordinates (2 plane, 2 plane + 1), oriented so
    // that contraction into omega = dx ^ dy (first slot) gives +d mu
    RatMat a(n, n);
    a(2 * plane, 2 * plane + 1) = 1;
    a(2 * plane + 1, 2 * plane) = -1;
    return a;
}

inline ExampleSpace s1_r2(bool shifted) {
    HamiltonianSpace h;
    h.name = shifted ? "s1_r2_shifted" : "s1_r2";
    h.z.n = 2;
    h.z.variables = {"x", "y"};
    h.z.lie = LieAlgebra::abelian(1);
    h.z.lie.tag = GroupTag::orthogonal;
    h.z.lie.rep = {rotation_generator(2, 0)};
    h.z.mu = {parse_polynomial(shifted ? "1/2*x^2 + 1/2*y^2 - 1/2" : "1/2*x^2 + 1/2*y^2",
                               h.z.variables)};
    h.omega = standard_symplectic_pairs(1);
    ExampleSpace ex{h, {}};
    if (shifted)
        ex.points = {{"unit_x", {Rational(1), Rational(0)}},
                     {"diag", {Rational(3, 5), Rational(4, 5)}}};
    else
        ex.points = {{"origin", {Rational(0), Rational(0)}}};
    return ex;
}

inline ExampleSpace so3_cotangent_r3() {
    HamiltonianSpace h;
    h.name = "so3_cotangent_r3";
    h.z.n = 6;
    h.z.variables = {"q1", "q2", "q3", "p1", "p2", "p3"};
    h.z.lie = LieAlgebra::so3();
    // diagonal action g.(q, p) = (g q, g p) of the vector representation
    int eps[3][3][3] = {};
    eps[0][1][2] = 1; eps[1][2][0] = 1; eps[2][0][1] = 1;
    eps[0][2][1] = -1; eps[2][1][0] = -1; eps[1][0][2] = -1;
    h.z.lie.rep.assign(3, RatMat(6, 6));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t c = 0; c < 3; ++c) {
                h.z.lie.rep[i](a, c) = eps[a][i][c];
                h.z.lie.rep[i](3 + a, 3 + c) = eps[a][i][c];
            }
    // omega = sum dq_a ^ dp_a; mu = q x p
    RatMat w(6, 6);
    for (std::size_t a = 0; a < 3; ++a) {
        w(a, 3 + a) = 1;
        w(3 + a, a) = -1;
    }
    h.omega = w;
    h.z.mu = {parse_polynomial("q2*p3 - q3*p2", h.z.variables),
              parse_polynomial("q3*p1 - q1*p3", h.z.variables),
              parse_polynomial("q1*p2 - q2*p1", h.z.variables)};
    ExampleSpace ex{h, {}};
    ex.points = {{"aligned", {Rational(1), Rational(0), Rational(0), Rational(1), Rational(0),
                              Rational(0)}},
                 {"origin", {Rational(0), Rational(0), Rational(0), Rational(0), Rational(0),
                             Rational(0)}}};
    return ex;
}

inline ExampleSpace t2_c2() {
    HamiltonianSpace h;
    h.name = "t2_c2";
    h.z.n = 4;
    h.z.variables = {"x1", "y1", "x2", "y2"};
    h.z.lie = LieAlgebra::abelian(2);
    h.z.lie.tag = GroupTag::orthogonal;
    h.z.lie.rep = {rotation_generator(4, 0), rotation_generator(4, 1)};
    h.z.mu = {parse_polynomial("1/2*x1^2 + 1/2*y1^2", h.z.variables),
              parse_polynomial("1/2*x2^2 + 1/2*y2^2", h.z.variables)};
    h.omega = standard_symplectic_pairs(2);
    ExampleSpace ex{h, {}};
    ex.points = {{"origin", {Rational(0), Rational(0), Rational(0), Rational(0)}}};
    return ex;
}

inline ExampleSpace trivial_group() {
    HamiltonianSpace h;
    h.name = "trivial_group";
    h.z.n = 2;
    h.z.variables = {"x", "y"};
    h.z.lie = LieAlgebra::abelian(0);
    h.omega = standard_symplectic_pairs(1);
    ExampleSpace ex{h, {}};
    ex.points = {{"origin", {Rational(0), Rational(0)}}};
    return ex;
}

}  // namespace detail

inline ExampleSpace builtin_example(const std::string& name) {
    if (name == "s1_r2") return detail::s1_r2(false);
    if (name == "s1_r2_shifted") return detail::s1_r2(true);
    if (name == "so3_cotangent_r3") return detail::so3_cotangent_r3();
    if (name == "t2_c2") return detail::t2_c2();
    if (name == "trivial_group") return detail::trivial_group();
    std::string all;
    for (const auto& n : builtin_example_names()) all += (all.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown builtin example '" + name + "' (valid: " + all + ")");
}

}  // namespace dgred
