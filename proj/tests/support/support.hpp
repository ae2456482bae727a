#pragma once

// Shared helpers for the unit tests and the acceptance runner: corpus access,
// golden files, and independent oracles that do not reuse library code paths.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "thimac/joints.hpp"
#include "thimac/parser.hpp"
#include "thimac/scenario.hpp"

namespace support {

std::string source_dir();
std::string corpus_path(const std::string& name);
std::string golden_path(const std::string& name);
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

/// Parses a corpus file; throws std::runtime_error if it does not parse.
thimac::ParseResult load_model(const std::string& name);
thimac::Scenario load_scenario(const std::string& name);

/// Compares against tests/golden/<name>. With THIMAC_UPDATE_GOLDENS set the
/// golden is rewritten instead and the comparison passes.
bool matches_golden(const std::string& name, const std::string& actual, std::string* why = nullptr);

/// The reference models, each with events and a chronology.
extern const std::vector<std::string> kReferenceModels;
/// fixture file -> the one diagnostic code it must produce
extern const std::map<std::string, std::string> kErrorFixtures;
/// (model, scenario) pairs exercised by the trace properties
extern const std::vector<std::pair<std::string, std::string>> kRuns;

/// The three points of contact between the banking ATM and the transaction
/// stub: each passed check creates the matching transaction item.
std::vector<thimac::Joint> atm_transaction_joints();

/// Canonical text of the joined banking/transaction model, carrying the
/// banking model's events and chronology.
std::string joined_atm_text();

// ---- text-level corpus scan --------------------------------------------

struct ScanCounts {
    std::size_t stages = 0;
    std::size_t flow_edges = 0;
    std::size_t triggers = 0;
    std::size_t counters = 0;
};

/// Counts declarations by scanning the raw `.tm` text with regular
/// expressions, without the library parser.
ScanCounts scan_counts(const std::string& source);

// ---- minimal DOT reader ---------------------------------------------------

struct DotEdge {
    std::string from;
    std::string to;
    std::map<std::string, std::string> attrs;
};

struct DotNode {
    std::string id;
    std::map<std::string, std::string> attrs;
};

struct DotGraph {
    bool ok = false;
    std::string error;
    std::string name;
    std::vector<DotNode> nodes;
    std::vector<DotEdge> edges;
    std::vector<std::string> clusters;
    std::vector<std::string> comments;
};

/// Accepts the statement subset of the DOT grammar: attribute statements,
/// node and edge statements, `ID = ID`, nested subgraphs, C and C++ comments.
DotGraph read_dot(const std::string& text);

// ---- reference interpreter -----------------------------------------------

/// Straight-line re-implementation of the execution rules, used as the trace
/// oracle. Returns the trace in the textual trace format; a run that stops
/// on an error ends with an "error:<code>" line.
std::string reference_trace(const thimac::StaticModel& model, const thimac::Scenario& scenario);

}  // namespace support
