#pragma once

#include <cstddef>
#include <vector>

#include "alloymsa/configuration.hpp"
#include "alloymsa/lattice.hpp"
#include "alloymsa/linalg.hpp"
#include "alloymsa/potential.hpp"

namespace alloymsa {

enum class BoundaryKind { dirichlet_truncation, neumann };

// Finite-box Hamiltonian; row i of the matrix is the site box.point(i).
struct BoxOperator {
    Box box;
    Matrix matrix;
    BoundaryKind kind = BoundaryKind::dirichlet_truncation;
    std::vector<double> potential;  // v_omega on the box, same order

    std::size_t size() const { return matrix.rows(); }
    std::size_t index_of(const LatticePoint& x) const;  // throws outside the box
};

// dense storage cap on the number of box points; ALLOYMSA_CAPACITY overrides
std::size_t capacity_limit();

// v_omega(x) = sum_k omega_k u(x - k) for every x in the box
std::vector<double> assemble_potential(const SingleSitePotential& u, const Configuration& config,
                                       const Box& box);

BoxOperator operator_from_potential(const Box& box, std::vector<double> potential,
                                    BoundaryKind kind);
BoxOperator free_operator(const Box& box, BoundaryKind kind);
BoxOperator restrict_hamiltonian(const SingleSitePotential& u, const Configuration& config,
                                 const Box& box, BoundaryKind kind);

// principal submatrix on sub (the Dirichlet-truncated restriction of the
// same Hamiltonian); sub must lie inside op.box
BoxOperator principal_restriction(const BoxOperator& op, const Box& sub);

}  // namespace alloymsa
