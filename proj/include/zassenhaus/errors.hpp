#pragma once

#include <stdexcept>
#include <string>

namespace zassenhaus {

// Precondition violations carry a distinct type each so callers (and tests)
// can tell them apart without parsing messages.
struct not_in_maximal_ideal : std::domain_error {
  explicit not_in_maximal_ideal(const std::string& what) : std::domain_error(what) {}
};

struct not_a_unit : std::domain_error {
  explicit not_a_unit(const std::string& what) : std::domain_error(what) {}
};

struct bad_linear_part : std::invalid_argument {
  explicit bad_linear_part(const std::string& what) : std::invalid_argument(what) {}
};

struct bad_p_power_coefficient : std::invalid_argument {
  explicit bad_p_power_coefficient(const std::string& what) : std::invalid_argument(what) {}
};

struct bad_head : std::invalid_argument {
  explicit bad_head(const std::string& what) : std::invalid_argument(what) {}
};

// An operator power or conjugation landed outside span{d_i} + span{D^p^j}.
// Closure guarantees this never fires for honest inputs; it means a bug.
struct not_in_envelope : std::logic_error {
  explicit not_in_envelope(const std::string& what) : std::logic_error(what) {}
};

struct not_a_torus : std::domain_error {
  explicit not_a_torus(const std::string& what) : std::domain_error(what) {}
};

struct root_not_in_field : std::domain_error {
  explicit root_not_in_field(const std::string& what) : std::domain_error(what) {}
};

struct inconsistent_scaling : std::runtime_error {
  explicit inconsistent_scaling(const std::string& what) : std::runtime_error(what) {}
};

struct not_found : std::runtime_error {
  explicit not_found(const std::string& what) : std::runtime_error(what) {}
};

// A statement the reduction machinery relies on failed on a concrete input.
// Firing is a finding, never expected control flow.
struct lemma_violation : std::runtime_error {
  explicit lemma_violation(const std::string& what) : std::runtime_error(what) {}
};

struct zero_input : std::invalid_argument {
  explicit zero_input(const std::string& what) : std::invalid_argument(what) {}
};

struct config_error : std::invalid_argument {
  explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

struct parse_error : std::invalid_argument {
  explicit parse_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace zassenhaus
