#include "alloymsa/hamiltonian.hpp"

#include <cstdlib>
#include <string>

#include "alloymsa/error.hpp"
#include "alloymsa/numerics.hpp"

namespace alloymsa {

std::size_t BoxOperator::index_of(const LatticePoint& x) const {
    auto i = box.index_of(x);
    require(i.has_value(), ErrorKind::geometry, "site " + x.str() + " is outside the box");
    return *i;
}

std::size_t capacity_limit() {
    if (const char* env = std::getenv("ALLOYMSA_CAPACITY")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 20000;
}

std::vector<double> assemble_potential(const SingleSitePotential& u, const Configuration& config,
                                       const Box& box) {
    require(u.dim() == box.dim() && config.domain().dim() == box.dim(), ErrorKind::parameter,
            "potential, configuration and box dimensions differ");
    std::vector<double> v(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) {
        const LatticePoint x = box.point(i);
        CompensatedSum s;
        // k = x - j runs over the translates hitting x
        for (const auto& e : u.entries()) s.add(config.at(x - e.k) * e.value);
        v[i] = s.value();
    }
    return v;
}

BoxOperator operator_from_potential(const Box& box, std::vector<double> potential,
                                    BoundaryKind kind) {
    const std::size_t n = box.size();
    require(n <= capacity_limit(), ErrorKind::capacity,
            "box with " + std::to_string(n) + " points exceeds the dense capacity " +
                std::to_string(capacity_limit()));
    require(potential.size() == n, ErrorKind::parameter, "potential size differs from box size");
    BoxOperator op{box, Matrix(n, n), kind, std::move(potential)};
    const int d = box.dim();
    for (std::size_t i = 0; i < n; ++i) {
        const LatticePoint x = box.point(i);
        int inside = 0;
        for (int r = 0; r < d; ++r) {
            for (int s : {-1, 1}) {
                LatticePoint y = x;
                y[r] += s;
                if (auto j = box.index_of(y)) {
                    op.matrix(i, *j) = -1.0;
                    ++inside;
                }
            }
        }
        const double free_diag = kind == BoundaryKind::neumann ? inside : 2.0 * d;
        op.matrix(i, i) = free_diag + op.potential[i];
    }
    return op;
}

BoxOperator free_operator(const Box& box, BoundaryKind kind) {
    return operator_from_potential(box, std::vector<double>(box.size(), 0.0), kind);
}

BoxOperator restrict_hamiltonian(const SingleSitePotential& u, const Configuration& config,
                                 const Box& box, BoundaryKind kind) {
    require(box.size() <= capacity_limit(), ErrorKind::capacity,
            "box with " + std::to_string(box.size()) + " points exceeds the dense capacity " +
                std::to_string(capacity_limit()));
    return operator_from_potential(box, assemble_potential(u, config, box), kind);
}

BoxOperator principal_restriction(const BoxOperator& op, const Box& sub) {
    require(op.box.contains(sub), ErrorKind::geometry, "sub box is not inside the operator box");
    require(op.kind == BoundaryKind::dirichlet_truncation, ErrorKind::parameter,
            "principal restriction is only the box restriction for Dirichlet truncation");
    const std::size_t n = sub.size();
    std::vector<std::size_t> map(n);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        map[i] = *op.box.index_of(sub.point(i));
        v[i] = op.potential[map[i]];
    }
    BoxOperator out{sub, Matrix(n, n), op.kind, std::move(v)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.matrix(i, j) = op.matrix(map[i], map[j]);
    return out;
}

}  // namespace alloymsa
