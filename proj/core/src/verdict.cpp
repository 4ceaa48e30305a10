#include "cachepriv/verdict.hpp"

#include <json.hpp>

namespace cachepriv {

std::string to_json(const Verdict& v) {
  nlohmann::json j{{"check", v.check},
                   {"passed", v.passed},
                   {"atoms", v.atoms},
                   {"cases", v.cases},
                   {"mutual_information_bits", v.mutual_information_bits}};
  j["counterexample"] = v.counterexample ? nlohmann::json(*v.counterexample) : nlohmann::json(nullptr);
  return j.dump();
}

}  // namespace cachepriv
