#pragma once

#include "asearch/potentials.hpp"
#include "asearch/types.hpp"

namespace asearch {

// Energy of one trajectory frame projected on the linearized eigenmodes of
// the free chain at rest. Vibrational modes are numbered 1..n-1 ascending in
// frequency; the rigid translation is reported separately as center-of-mass
// kinetic energy.
struct SpectrumReport {
    Vec omegas;    // ascending, rad/s, rigid mode excluded
    Vec energies;  // per-mode E_i = 1/2 (omega_i^2 q_i^2 + qdot_i^2)
    double com_energy = 0.0;
    double com_velocity = 0.0;

    double total() const { return energies.sum(); }
    // Inclusive band sum over 1-based vibrational mode indices.
    double band(int lo, int hi) const;
};

SpectrumReport modal_spectrum(const NeoHookeanChain1D& chain, const Vec& x, const Vec& v);

}  // namespace asearch
