#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qbopt/statevector.hpp"

namespace qbopt {

/// CNOT wiring patterns the circuit can be built with.
enum class Connectivity { NoConnections, Linear, Ring, OneToAll, AllToAll };

inline constexpr std::array<Connectivity, 5> kAllConnectivities = {
    Connectivity::NoConnections, Connectivity::Linear, Connectivity::Ring,
    Connectivity::OneToAll, Connectivity::AllToAll};

/// Stable CLI tags: nc, lin, ring, ota, ata.
std::string_view connectivity_tag(Connectivity connectivity);
std::optional<Connectivity> parse_connectivity(std::string_view tag);

struct CnotEdge {
  int control;
  int target;
};

/// Single-layer parameterized circuit: one y-rotation per qubit followed by
/// the pattern's CNOTs in a fixed order. Immutable once built.
struct Ansatz {
  int n = 0;
  Connectivity connectivity = Connectivity::NoConnections;
  std::vector<CnotEdge> edges;

  int param_count() const { return n; }
};

/// Edge lists by pattern (1-based qubits):
///   nc    none
///   lin   (1,2) (2,3) ... (n-1,n)
///   ring  lin plus the closing edge (n,1)
///   ota   qubit 1 fans out: (1,2) (1,3) ... (1,n)
///   ata   every pair control<target in lexicographic order
Ansatz build_ansatz(Connectivity connectivity, int n);

/// Applies the circuit in place: rotations first, then CNOTs in edge order.
void apply_ansatz(Statevector& state, const Ansatz& ansatz, std::span<const double> theta);

}  // namespace qbopt
