#include "cobos/quantum_numbers.hpp"

#include <sstream>
#include <stdexcept>

namespace cobos {

std::string validation_message(const QuantumNumbers& b) {
  std::ostringstream why;
  if (b.n < 1) {
    why << "n must be >= 1 (got n=" << b.n << ")";
    return why.str();
  }
  if (b.ell < 0 || b.ell > b.n - 1) {
    why << "l must satisfy 0 <= l <= n-1 (got l=" << b.ell << ", n=" << b.n << ")";
    return why.str();
  }
  if (b.S != 0 && b.S != 1) {
    why << "S must be 0 or 1 (got S=" << b.S << ")";
    return why.str();
  }
  if (b.S == 0) {
    if (b.j != b.ell) {
      why << "S=0 requires j=l (got j=" << b.j << ", l=" << b.ell << ")";
      return why.str();
    }
  } else {
    const bool plus = (b.j == b.ell + 1);
    const bool same = (b.j == b.ell) && b.ell >= 1;
    const bool minus = (b.j == b.ell - 1) && b.ell >= 1;
    if (b.j == b.ell && b.ell == 0) {
      why << "S=1 with j=l requires l>=1 (got l=0)";
      return why.str();
    }
    if (b.j == b.ell - 1 && b.ell == 0) {
      why << "j=l-1 needs l>=1 (got l=0)";
      return why.str();
    }
    if (!(plus || same || minus)) {
      why << "S=1 requires j in {l-1, l, l+1} (got j=" << b.j << ", l=" << b.ell << ")";
      return why.str();
    }
    if (b.j < 0) {
      why << "j must be >= 0 (got j=" << b.j << ")";
      return why.str();
    }
  }
  if (b.m_j < -b.j || b.m_j > b.j) {
    why << "|m_j| must be <= j (got m_j=" << b.m_j << ", j=" << b.j << ")";
    return why.str();
  }
  return {};
}

bool is_valid(const QuantumNumbers& beta) { return validation_message(beta).empty(); }

void validate(const QuantumNumbers& beta) {
  const std::string why = validation_message(beta);
  if (!why.empty()) throw std::invalid_argument("invalid quantum numbers " + to_string(beta) + ": " + why);
}

std::vector<QuantumNumbers> enumerate_states(int n_max) {
  if (n_max < 1) throw std::domain_error("enumerate_states: n_max must be >= 1");
  std::vector<QuantumNumbers> out;
  for (int n = 1; n <= n_max; ++n) {
    for (int ell = 0; ell < n; ++ell) {
      for (int S = 0; S <= 1; ++S) {
        for (int j = ell - 1; j <= ell + 1; ++j) {
          if (j < 0) continue;
          for (int mj = -j; mj <= j; ++mj) {
            QuantumNumbers b{n, ell, S, j, mj};
            if (is_valid(b)) out.push_back(b);
          }
        }
      }
    }
  }
  return out;
}

std::string to_string(const QuantumNumbers& b) {
  std::ostringstream os;
  os << "(n=" << b.n << ", l=" << b.ell << ", S=" << b.S << ", j=" << b.j << ", m_j=" << b.m_j << ")";
  return os.str();
}

}  // namespace cobos
