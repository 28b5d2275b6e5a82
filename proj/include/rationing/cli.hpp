#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "rationing/generate.hpp"

namespace rationing::cli {

enum ExitCode : int {
  kPass = 0,
  kAxiomFailure = 1,
  kInputError = 2,
  kPreconditionError = 3,
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

struct AllocateFlags {
  std::string rule;
  std::string instance;
  std::string split;  // "q1,q2"
  std::string prefs;
  std::string out;    // empty writes to the output stream
  std::string format = "json";
};

struct CheckFlags {
  std::string instance;
  std::string matching;  // path, or "-" for the input stream
  std::string rule;
  std::string split;
  std::string prefs;
  std::string axioms = "all";
  std::size_t budget = 64;
  std::string out;
  std::string format = "json";
};

struct GenFlags {
  GeneratorOptions options;
  std::string out;
};

struct VerifyFlags {
  std::size_t count = 100;
  std::size_t max_agents = 5;
  std::uint64_t seed = 1;
  GeneratorOptions gen;  // agents and seed are drawn per instance
  std::size_t budget = 16;
  std::optional<std::size_t> fault_skip_rejection;
};

int allocate(const AllocateFlags& flags, Streams io);
int check(const CheckFlags& flags, Streams io);
int gen(const GenFlags& flags, Streams io);
int verify(const VerifyFlags& flags, Streams io);

/// Parses the command line and dispatches to a subcommand.
int run(int argc, const char* const* argv, Streams io);

}  // namespace rationing::cli
