#include "cachepriv/descriptor.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cachepriv {
namespace {

using nlohmann::json;

const char* kind_name(DemandSetKind k) {
  switch (k) {
    case DemandSetKind::kFull: return "full";
    case DemandSetKind::kRestricted: return "restricted";
    case DemandSetKind::kType: return "type";
  }
  return "full";
}

DemandSubset demand_set_from(const json& j, std::size_t n_files, std::size_t n_users) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "full") return full_demand_set(n_files, n_users);
  if (kind == "restricted") {
    if (n_files == 0 || n_users % n_files != 0) {
      throw std::invalid_argument("descriptor: restricted set needs users divisible by files");
    }
    return restricted_demand_set(n_files, n_users / n_files);
  }
  if (kind == "type") {
    auto set = type_class(j.at("type").get<std::vector<std::size_t>>());
    if (set.n_files != n_files || set.n_users != n_users) {
      throw std::invalid_argument("descriptor: type does not match (files, users)");
    }
    return set;
  }
  throw std::invalid_argument("descriptor: unknown demand set kind '" + kind + "'");
}

}  // namespace

std::string export_descriptor(const LinearSchemeMatrices& m) {
  m.validate();
  json j;
  j["format"] = kDescriptorFormat;
  j["files"] = m.n_files;
  j["users"] = m.n_users;
  j["subpacketization"] = m.subpacketization;
  j["cache_dim"] = m.cache_dim;
  j["tx_dim"] = m.tx_dim;
  j["memory"] = to_fraction_string(m.memory());
  j["rate"] = to_fraction_string(m.rate());
  json set{{"kind", kind_name(m.demands.kind)}};
  if (m.demands.kind == DemandSetKind::kType) set["type"] = m.demands.type;
  j["demand_set"] = set;
  j["placement"] = json::array();
  for (const auto& p : m.placement) j["placement"].push_back(p.to_string());
  j["delivery"] = json::array();
  for (std::size_t i = 0; i < m.delivery.size(); ++i) {
    j["delivery"].push_back({{"demand", m.demands.members[i]}, {"matrix", m.delivery[i].to_string()}});
  }
  return j.dump(2) + "\n";
}

LinearSchemeMatrices import_descriptor(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.at("format").get<std::string>() != kDescriptorFormat) {
      throw std::invalid_argument("descriptor: unsupported format");
    }
    LinearSchemeMatrices m;
    m.n_files = j.at("files").get<std::size_t>();
    m.n_users = j.at("users").get<std::size_t>();
    m.subpacketization = j.at("subpacketization").get<std::size_t>();
    m.cache_dim = j.at("cache_dim").get<std::size_t>();
    m.tx_dim = j.at("tx_dim").get<std::size_t>();
    if (m.columns() == 0 || m.columns() > gf2::kMaxColumns) {
      throw std::invalid_argument("descriptor: files * subpacketization must be in [1, 64]");
    }
    m.demands = demand_set_from(j.at("demand_set"), m.n_files, m.n_users);
    for (const auto& p : j.at("placement")) {
      m.placement.push_back(gf2::Matrix::parse(p.get<std::string>(), m.columns()));
    }
    m.delivery.assign(m.demands.members.size(), gf2::Matrix(m.columns()));
    std::vector<bool> seen(m.demands.members.size(), false);
    for (const auto& entry : j.at("delivery")) {
      const auto d = entry.at("demand").get<DemandVector>();
      if (!m.demands.contains(d)) throw std::invalid_argument("descriptor: delivery for an unserved demand");
      const std::size_t i = m.demands.index_of(d);
      if (seen[i]) throw std::invalid_argument("descriptor: duplicate delivery entry");
      seen[i] = true;
      m.delivery[i] = gf2::Matrix::parse(entry.at("matrix").get<std::string>(), m.columns());
    }
    for (bool s : seen) {
      if (!s) throw std::invalid_argument("descriptor: missing delivery for a served demand");
    }
    m.validate();
    return m;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("descriptor: ") + e.what());
  }
}

LinearSchemeMatrices load_descriptor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open descriptor " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return import_descriptor(buf.str());
}

void save_descriptor(const LinearSchemeMatrices& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << export_descriptor(m);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace cachepriv
