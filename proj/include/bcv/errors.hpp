#pragma once

#include <stdexcept>
#include <string>

namespace bcv {

// Every failure the engine can produce carries one of these codes so callers
// (CLI, corpus runner, tests) can react to the class of problem rather than
// matching message strings.
enum class errc {
  syntax,                // malformed DSL text
  duplicate_definition,  // same name/component defined twice
  unknown_identifier,    // reference to an undeclared name
  dimension_mismatch,    // index not a coordinate / wrong count
  singular_metric,       // det g == 0 at an evaluation point
  not_a_projector,       // idempotency/rank axioms fail
  non_integer_rank,      // trace(P) not near an integer
  domain_error,          // elementary function outside its domain
  division_by_zero,      // zero constant term in a jet divisor
  rank_excluded,         // tensor undefined at this (n, p)
  block_split_cross_terms,
  degenerate_normals,
  not_block_split,       // leaf restriction asked of a non-split projector
  leaf_not_rank3,        // Cotton oracle asked for a leaf of rank != 3
  unknown_vector,
  not_a_bcvf,            // identity suite on a field that fails bcvf_check
  empty_domain,          // sample box empty after margin shrink
  non_positive_rescale,
  bad_argument,          // CLI / API misuse not covered above
  io,                    // file not readable
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::syntax: return "syntax";
    case errc::duplicate_definition: return "duplicate-definition";
    case errc::unknown_identifier: return "unknown-identifier";
    case errc::dimension_mismatch: return "dimension-mismatch";
    case errc::singular_metric: return "singular-metric";
    case errc::not_a_projector: return "not-a-projector";
    case errc::non_integer_rank: return "non-integer-rank";
    case errc::domain_error: return "domain-error";
    case errc::division_by_zero: return "division-by-zero";
    case errc::rank_excluded: return "rank-excluded";
    case errc::block_split_cross_terms: return "block-split-cross-terms";
    case errc::degenerate_normals: return "degenerate-normals";
    case errc::not_block_split: return "not-block-split";
    case errc::leaf_not_rank3: return "leaf-not-rank3";
    case errc::unknown_vector: return "unknown-vector";
    case errc::not_a_bcvf: return "not-a-bcvf";
    case errc::empty_domain: return "empty-domain";
    case errc::non_positive_rescale: return "non-positive-rescale";
    case errc::bad_argument: return "bad-argument";
    case errc::io: return "io";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

// Syntax errors additionally carry the offset into the source text; the CLI
// turns that into line/column for the user.
class syntax_error : public error {
 public:
  syntax_error(std::size_t offset, const std::string& what)
      : error(errc::syntax, what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace bcv
