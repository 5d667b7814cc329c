#include "qbopt/ansatz.hpp"

#include <string>

#include "qbopt/errors.hpp"

namespace qbopt {

std::string_view connectivity_tag(Connectivity connectivity) {
  switch (connectivity) {
    case Connectivity::NoConnections: return "nc";
    case Connectivity::Linear: return "lin";
    case Connectivity::Ring: return "ring";
    case Connectivity::OneToAll: return "ota";
    case Connectivity::AllToAll: return "ata";
  }
  return "?";
}

std::optional<Connectivity> parse_connectivity(std::string_view tag) {
  if (tag == "nc") return Connectivity::NoConnections;
  if (tag == "lin") return Connectivity::Linear;
  if (tag == "ring") return Connectivity::Ring;
  if (tag == "ota") return Connectivity::OneToAll;
  if (tag == "ata") return Connectivity::AllToAll;
  return std::nullopt;
}

Ansatz build_ansatz(Connectivity connectivity, int n) {
  const int min_n = (connectivity == Connectivity::NoConnections) ? 1 : 2;
  if (n < min_n || n > kMaxQubits) {
    throw ArgumentError("build_ansatz: qubit count " + std::to_string(n) + " out of range " +
                        std::to_string(min_n) + ".." + std::to_string(kMaxQubits) + " for '" +
                        std::string(connectivity_tag(connectivity)) + "'");
  }
  Ansatz ansatz;
  ansatz.n = n;
  ansatz.connectivity = connectivity;
  switch (connectivity) {
    case Connectivity::NoConnections:
      break;
    case Connectivity::Linear:
      for (int q = 1; q < n; ++q) ansatz.edges.push_back({q, q + 1});
      break;
    case Connectivity::Ring:
      for (int q = 1; q < n; ++q) ansatz.edges.push_back({q, q + 1});
      ansatz.edges.push_back({n, 1});
      break;
    case Connectivity::OneToAll:
      for (int q = 2; q <= n; ++q) ansatz.edges.push_back({1, q});
      break;
    case Connectivity::AllToAll:
      for (int k = 1; k <= n; ++k)
        for (int j = k + 1; j <= n; ++j) ansatz.edges.push_back({k, j});
      break;
  }
  return ansatz;
}

void apply_ansatz(Statevector& state, const Ansatz& ansatz, std::span<const double> theta) {
  if (state.num_qubits() != ansatz.n) {
    throw ArgumentError("apply_ansatz: state has " + std::to_string(state.num_qubits()) +
                        " qubits, ansatz expects " + std::to_string(ansatz.n));
  }
  if (static_cast<int>(theta.size()) != ansatz.param_count()) {
    throw ArgumentError("apply_ansatz: got " + std::to_string(theta.size()) +
                        " parameters, ansatz expects " + std::to_string(ansatz.param_count()));
  }
  for (int m = 1; m <= ansatz.n; ++m) {
    state.apply_ry(m, theta[static_cast<std::size_t>(m - 1)]);
  }
  for (const CnotEdge& edge : ansatz.edges) {
    state.apply_cnot(edge.control, edge.target);
  }
}

}  // namespace qbopt
