#include "ptpn/wqo.hpp"

#include <algorithm>

namespace ptpn {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "yes";
    case Verdict::no:
      return "no";
    case Verdict::unknown:
      return "unknown";
  }
  return "unknown";
}

bool vector_leq(const OmegaVector& a, const OmegaVector& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

std::vector<OmegaVector> complement_ideals(int k, const std::vector<OmegaVector>& basis) {
  std::vector<OmegaVector> ideals{OmegaVector(k, omega)};
  for (const auto& b : basis) {
    std::vector<OmegaVector> next;
    for (const auto& u : ideals) {
      if (!vector_leq(b, u)) {
        next.push_back(u);
        continue;
      }
      for (int i = 0; i < k; ++i)
        if (b[i] > 0) {
          OmegaVector w = u;
          w[i] = b[i] - 1;
          next.push_back(w);
        }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    ideals.clear();
    for (size_t i = 0; i < next.size(); ++i) {
      bool covered = false;
      for (size_t j = 0; j < next.size() && !covered; ++j) covered = j != i && vector_leq(next[i], next[j]);
      if (!covered) ideals.push_back(next[i]);
    }
  }
  return ideals;
}

BasisResult<OmegaVector> valk_jantzen(int k, const std::function<bool(const OmegaVector&)>& meets_down,
                                      size_t max_iterations) {
  BasisResult<OmegaVector> res;
  for (size_t it = 0; it < max_iterations; ++it) {
    std::optional<OmegaVector> hit;
    for (const auto& u : complement_ideals(k, res.basis)) {
      ++res.oracle_calls;
      if (meets_down(u)) {
        hit = u;
        break;
      }
    }
    if (!hit) return res;
    OmegaVector v = *hit;
    for (int i = 0; i < k; ++i) {
      if (v[i] != omega) continue;
      long n = 0;
      while (true) {
        v[i] = n;
        ++res.oracle_calls;
        if (meets_down(v)) break;
        ++n;
      }
    }
    for (int i = 0; i < k; ++i)
      while (v[i] > 0) {
        --v[i];
        ++res.oracle_calls;
        if (!meets_down(v)) {
          ++v[i];
          break;
        }
      }
    res.basis.push_back(v);
  }
  res.status = Verdict::unknown;
  res.diagnostic = "iteration budget exhausted";
  return res;
}

}  // namespace ptpn
