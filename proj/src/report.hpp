#pragma once

// JSON builders shared by the C API. Internal to the shared library.

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

#include "kmlat/groups.hpp"
#include "kmlat/kmaction.hpp"
#include "kmlat/lattice.hpp"

namespace kmlat::report {

using nlohmann::ordered_json;

constexpr const char* kSchema = "kmlat-report-v1";

ordered_json error_json(const std::string& name, const std::string& detail);

ordered_json classify(const lattice::ClassificationInput& in);
ordered_json min_covolume(const lattice::ClassificationInput& in);
ordered_json dickson(const gf::Field& f, groups::Ambient ambient);
ordered_json verify(const gf::Field& f, lattice::LatticeKind kind,
                    std::optional<groups::GroupType> type, int radius, std::size_t max_elements);
ordered_json km_act(const gf::Field& f, int m, const std::string& word, const std::string& edge,
                    kmaction::PhiMode mode, bool crosscheck);
ordered_json zp_test(const gf::Field& f, int max_pairs);
ordered_json dihedral_search(const gf::Field& f, int window, int samples, std::uint64_t seed);
ordered_json tree_distance(const gf::Field& f, const std::string& m1, const std::string& m2);
ordered_json tree_neighbors(const gf::Field& f, const std::string& vertex);
ordered_json tree_permutation(const gf::Field& f, const std::string& g, const std::string& vertex);

}  // namespace kmlat::report
