#pragma once

#include <stdexcept>
#include <string>

namespace rmove {

// Base class for all recoverable library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A label lies outside {1..k}.
struct invalid_labeling_error : error {
  using error::error;
};

// A labeling relabels a terminal node.
struct terminal_moved_error : error {
  using error::error;
};

// Attempt to contract a terminal node into another terminal.
struct terminal_contract_error : error {
  using error::error;
};

// Malformed instance or membership file; message names the offending line.
struct parse_error : error {
  using error::error;
};

// Structurally valid file whose content violates a format rule.
struct format_error : error {
  using error::error;
};

// A caller-supplied parameter is outside its documented range.
struct parameter_error : error {
  using error::error;
};

// A fractional assignment violates the relaxation constraints.
struct feasibility_error : error {
  using error::error;
};

// An LP solution cannot be snapped to a valid fractional assignment.
struct lp_extraction_error : error {
  using error::error;
};

// An edge joins nodes whose assignment vectors differ in more than two
// entries; the caller must subdivide first.
struct subdivision_required_error : error {
  using error::error;
};

// A configured work or size bound would be exceeded.
struct capacity_error : error {
  using error::error;
};

// An invariant that the algorithms guarantee internally was violated;
// indicates a bug, not bad input.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

inline void internal_check(bool condition, const std::string& message) {
  if (!condition) throw internal_error(message);
}

}  // namespace rmove
