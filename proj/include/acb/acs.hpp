#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acb/calculus.hpp"

namespace acb {

struct Entry {
    Expression lin;
    Expression anti;

    friend bool operator==(const Entry&, const Entry&) = default;
};

// n x n matrix of (complex-linear, conjugate-linear) coefficient pairs.
// (J u)_i = sum_k lin_ik u_k + anti_ik conj(u_k).
class ACStructure {
public:
    ACStructure() = default;
    explicit ACStructure(int n);
    static ACStructure standard(int n);

    int n() const { return n_; }
    Entry& at(int i, int k) { return e_[static_cast<std::size_t>(i * n_ + k)]; }
    const Entry& at(int i, int k) const { return e_[static_cast<std::size_t>(i * n_ + k)]; }
    Expression& lin(int i, int k) { return at(i, k).lin; }
    Expression& anti(int i, int k) { return at(i, k).anti; }
    const Expression& lin(int i, int k) const { return at(i, k).lin; }
    const Expression& anti(int i, int k) const { return at(i, k).anti; }

    bool is_polynomial() const;
    friend bool operator==(const ACStructure&, const ACStructure&) = default;

private:
    int n_ = 0;
    std::vector<Entry> e_;
};

std::vector<cplx> apply(const ACStructure& J, std::span<const cplx> p, std::span<const cplx> u);
// Real 2n x 2n matrix of J at p in the frame (dx_1, dy_1, ..., dx_n, dy_n).
std::vector<double> real_matrix(const ACStructure& J, std::span<const cplx> p);

struct InvolutionReport {
    bool pass = false;
    // J o J + Id, entrywise (lin, anti).
    std::vector<Entry> residual;
    std::vector<std::string> failing;
};
InvolutionReport check_involution(const ACStructure& J);

struct LineReport {
    bool pass = false;
    std::vector<Expression> residuals;
    std::vector<std::string> failing;
    std::vector<cplx> witness_point;
    double witness_residual = 0.0;
};
LineReport weak_line_check(const ACStructure& J, std::uint64_t seed = 1);
LineReport line_check(const ACStructure& J, std::uint64_t seed = 1);

using ComplexField = std::vector<Quotient>;
// Real constant vector fields given by their complex components (dx_k -> e_k, dy_k -> i e_k).
ComplexField nijenhuis(const ACStructure& J, std::span<const Cq> X, std::span<const Cq> Y);
std::vector<cplx> evaluate(const ComplexField& f, std::span<const cplx> p);
// Frame vector by name: x,y,u,v for n = 2, else x1,y1,...
std::vector<Cq> frame_vector(int n, const std::string& name);
std::vector<std::string> frame_names(int n);

struct Relation {
    std::string name;
    SurdSum value;
    bool pass = false;
};
struct ObstructionReport {
    std::vector<Relation> relations;
    bool all_pass = false;
    // dz and dzbar components of N(d/dzbar_1, d/dzbar_2) at the origin.
    std::vector<cplx> n_dzbar12;
};
ObstructionReport obstruction_relations(const ACStructure& J);

bool is_standard_at_origin(const ACStructure& J);

} // namespace acb
