#include "cachepriv/demand.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "cachepriv/scheme.hpp"

namespace cachepriv {

std::vector<FileIndex> cyclic_shift(const std::vector<FileIndex>& v, std::int64_t times) {
  const auto n = static_cast<std::int64_t>(v.size());
  if (n == 0) return v;
  const std::int64_t s = ((times % n) + n) % n;
  std::vector<FileIndex> out(v.size());
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>((i + s) % n)] = v[static_cast<std::size_t>(i)];
  return out;
}

std::vector<FileIndex> mod_sub_vec(const KeyAssignment& keys, const DemandVector& demands,
                                   std::size_t n_files) {
  if (keys.size() != demands.size()) throw std::invalid_argument("mod_sub_vec: length mismatch");
  std::vector<FileIndex> out(keys.size());
  for (std::size_t k = 0; k < keys.size(); ++k) {
    if (keys[k] >= n_files || demands[k] >= n_files) {
      throw std::invalid_argument("mod_sub_vec: entry out of range");
    }
    out[k] = static_cast<FileIndex>((keys[k] + n_files - demands[k]) % n_files);
  }
  return out;
}

DemandVector expand_shifts(const std::vector<FileIndex>& shifts, std::size_t n_files) {
  std::vector<FileIndex> identity(n_files);
  std::iota(identity.begin(), identity.end(), FileIndex{0});
  DemandVector out;
  out.reserve(shifts.size() * n_files);
  for (auto s : shifts) {
    const auto block = cyclic_shift(identity, s);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

DemandVector expand_demand(const DemandVector& demands, const KeyAssignment& keys,
                           std::size_t n_files) {
  return expand_shifts(mod_sub_vec(keys, demands, n_files), n_files);
}

bool DemandSubset::contains(const DemandVector& d) const {
  return std::find(members.begin(), members.end(), d) != members.end();
}

std::size_t DemandSubset::index_of(const DemandVector& d) const {
  const auto it = std::find(members.begin(), members.end(), d);
  if (it == members.end()) throw std::out_of_range("demand vector not in served set");
  return static_cast<std::size_t>(it - members.begin());
}

std::string DemandSubset::label() const {
  switch (kind) {
    case DemandSetKind::kFull:
      return "full";
    case DemandSetKind::kRestricted:
      return "D_RS";
    case DemandSetKind::kType: {
      std::string s = "type(";
      for (std::size_t i = 0; i < type.size(); ++i) {
        if (i > 0) s += ",";
        s += std::to_string(type[i]);
      }
      return s + ")";
    }
  }
  return "unknown";
}

DemandSubset restricted_demand_set(std::size_t n_files, std::size_t n_stacks) {
  if (n_files == 0 || n_stacks == 0) throw std::invalid_argument("restricted_demand_set: N, K >= 1");
  DemandSubset set;
  set.n_files = n_files;
  set.n_users = n_files * n_stacks;
  set.kind = DemandSetKind::kRestricted;
  const std::uint64_t count = ipow(n_files, n_stacks);
  for (std::uint64_t r = 0; r < count; ++r) {
    auto c = demand_unrank(r, n_files, n_stacks);
    set.members.push_back(expand_shifts(c, n_files));
    set.shifts.push_back(std::move(c));
  }
  return set;
}

DemandSubset full_demand_set(std::size_t n_files, std::size_t n_users) {
  DemandSubset set;
  set.n_files = n_files;
  set.n_users = n_users;
  set.kind = DemandSetKind::kFull;
  set.members = all_demands(n_files, n_users);
  return set;
}

DemandSubset type_class(const std::vector<std::size_t>& type) {
  DemandSubset set;
  set.n_files = type.size();
  set.n_users = std::accumulate(type.begin(), type.end(), std::size_t{0});
  set.kind = DemandSetKind::kType;
  set.type = type;
  for (auto& d : all_demands(set.n_files, set.n_users)) {
    if (demand_type(d, set.n_files) == type) set.members.push_back(std::move(d));
  }
  return set;
}

std::vector<std::size_t> demand_type(const DemandVector& demands, std::size_t n_files) {
  std::vector<std::size_t> t(n_files, 0);
  for (auto d : demands) t.at(d) += 1;
  return t;
}

}  // namespace cachepriv
