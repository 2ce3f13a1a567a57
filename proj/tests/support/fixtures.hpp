#ifndef KBL_TESTS_FIXTURES_HPP
#define KBL_TESTS_FIXTURES_HPP

#include <string>
#include <string_view>

#include "kbl/io.hpp"

namespace fixtures {

inline kbl::Formula F(std::string_view text) { return kbl::parse_formula(text); }

inline std::string model_path(const std::string& name) { return std::string(KBL_MODELS_DIR) + "/" + name; }

inline const kbl::Snm& fig2() {
  static const kbl::Snm snm = kbl::parse_snm(kbl::read_file(model_path("fig2.snm")));
  return snm;
}

inline const kbl::KripkeModel& fig1() {
  static const kbl::KripkeModel m = kbl::parse_kripke(kbl::read_file(model_path("fig1.kripke")));
  return m;
}

}  // namespace fixtures

#endif  // KBL_TESTS_FIXTURES_HPP
