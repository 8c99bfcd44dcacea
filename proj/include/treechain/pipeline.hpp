#pragma once

#include "treechain/io.hpp"
#include "treechain/svg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace treechain::pipeline {

struct PipelineConfig {
    int l = 1;
    std::optional<std::vector<Rational>> eps;
    std::uint64_t seed = 1;
    std::string out_dir;

    /// l >= 1 and a valid override of length l+1. Throws std::invalid_argument.
    void validate() const;
};

struct Generated {
    CoverSystem system;
    RealizedSystem realized;
    EnlargedFamily enlarged;

    io::Instance instance() const { return io::make_instance(system, enlarged); }
};

/// Family diagram with k = l+1, trisected, covered, realized and enlarged.
Generated generate(const PipelineConfig& cfg, Exec exec = Exec::Parallel);

/// Writes instance.json, regions.json and covers.svg into `dir`.
void write_outputs(const Generated& g, const std::string& dir);

enum class Status { Pass, Fail, Skipped };

struct ConditionResult {
    std::string name;
    Status status = Status::Skipped;
    std::string witness;
    double millis = 0;
};

struct VerificationReport {
    std::vector<ConditionResult> conditions;
    std::vector<std::pair<std::string, std::string>> info;

    bool ok() const;
    const ConditionResult* find(const std::string& name) const;
    const ConditionResult* first_failure() const;
    std::string text(bool timing = true) const;
    io::Json json() const;
};

/// Condition names in report order.
const std::vector<std::string>& condition_names();

/// Every condition on the combinatorial data and on the exact geometry.
/// A condition that cannot be evaluated because an earlier structural one
/// failed is reported as skipped.
VerificationReport verify(const io::Instance& inst, Exec exec = Exec::Parallel);

struct OracleReport {
    long membership_queries = 0;
    long membership_agree = 0;
    long map_pairs = 0;
    long map_agree = 0;
    std::string first_disagreement;

    bool ok() const { return membership_agree == membership_queries && map_agree == map_pairs; }
    std::string text() const;
};

/// Random membership queries on the instance and random map pairs on small
/// random trees, each decided two independent ways.
OracleReport run_oracle(const io::Instance& inst, long trials, std::uint64_t seed);

std::string example1_text(const Example1Report& rep);

struct Fixture {
    std::string name;
    std::string fails_at; // condition expected to be the first failure
    io::Instance instance;
};

/// The five negative fixtures, each a single edit of a generated instance.
std::vector<Fixture> negative_fixtures();

} // namespace treechain::pipeline
