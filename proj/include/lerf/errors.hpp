#pragma once

#include <stdexcept>
#include <string>

namespace lerf {

// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A symbol or signed letter outside the declared alphabet.
struct UnknownLetter : Error {
  using Error::Error;
};

// An operation that needs a nontrivial word was given the identity.
struct EmptyWord : Error {
  using Error::Error;
};

// An edge references a vertex id that does not exist.
struct DanglingVertex : Error {
  using Error::Error;
};

// A vertex has two distinct outgoing edges with the same label.
struct NotWellLabeled : Error {
  using Error::Error;
};

// The element to separate already lies in the subgroup.
struct ElementInSubgroup : Error {
  using Error::Error;
};

// The element to separate is trivial in the ambient group.
struct EmptyWitness : Error {
  using Error::Error;
};

// A graft was requested but the shared component does not embed in the patch.
struct NoEmbedding : Error {
  using Error::Error;
};

// The graph handed to double_up is not a precover.
struct NotPrecover : Error {
  using Error::Error;
};

// Precover completion requires every monochromatic component to be a cover.
struct Property1Violated : Error {
  using Error::Error;
};

// Precover completion hit a state its preconditions rule out.
struct CompletionError : Error {
  using Error::Error;
};

// No bichromatic vertex with trivial amalgam intersection remains.
struct NoDeficientVertex : Error {
  using Error::Error;
};

// A double spec violates its own invariants (e.g. non-malnormal amalgam word).
struct SpecInvariantError : Error {
  using Error::Error;
};

// A configuration value outside the supported range.
struct ConfigError : Error {
  using Error::Error;
};

// Input text that does not parse; carries the 1-based position.
struct ParseError : Error {
  ParseError(const std::string& msg, int line_no, int column_no)
      : Error(msg + " at line " + std::to_string(line_no) + ", column " +
              std::to_string(column_no)),
        line(line_no),
        column(column_no) {}
  int line;
  int column;
};

}  // namespace lerf
