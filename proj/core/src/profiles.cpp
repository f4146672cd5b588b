#include <algorithm>

#include "qmw/enumerate.hpp"
#include "qmw/errors.hpp"

namespace qmw {

std::vector<AbelianGroup> FibreProfile::fibres() const {
  std::vector<AbelianGroup> out;
  for (const auto& b : blocks) {
    for (int c = 0; c < b.copies; ++c) out.push_back(b.group);
  }
  return out;
}

int FibreProfile::order() const {
  int total = 0;
  for (const auto& b : blocks) total += b.group.order() * b.copies;
  return total;
}

int FibreProfile::fibre_count() const {
  int total = 0;
  for (const auto& b : blocks) total += b.copies;
  return total;
}

namespace {

void extend(const std::vector<AbelianGroup>& groups, std::size_t from, int remaining,
            std::vector<FibreBlock>& current, std::vector<FibreProfile>& out) {
  if (remaining == 0) {
    out.push_back(FibreProfile{current});
    return;
  }
  for (std::size_t g = from; g < groups.size(); ++g) {
    int size = groups[g].order();
    for (int copies = 1; copies * size <= remaining; ++copies) {
      current.push_back(FibreBlock{groups[g], copies});
      extend(groups, g + 1, remaining - copies * size, current, out);
      current.pop_back();
    }
  }
}

}  // namespace

std::vector<FibreProfile> fibre_profiles(int n, bool exponent_two_only) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  std::vector<AbelianGroup> groups;
  for (int m = 1; m <= n; ++m) {
    for (auto& g : groups_of_order(m)) {
      if (!exponent_two_only || g.exponent() <= 2) groups.push_back(std::move(g));
    }
  }
  std::sort(groups.begin(), groups.end());
  std::vector<FibreProfile> out;
  std::vector<FibreBlock> current;
  extend(groups, 0, n, current, out);
  return out;
}

}  // namespace qmw
