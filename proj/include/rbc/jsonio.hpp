#pragma once

#include <string>

#include <json.hpp>

#include "rbc/character.hpp"
#include "rbc/charops.hpp"
#include "rbc/packets.hpp"
#include "rbc/twisted.hpp"

namespace rbc {

using json = nlohmann::json;

json cyc_to_json(const Cyc& c);
json table_to_json(const CharTable& t);
json finite_torus_to_json(const FiniteTorusReport& r);
json shintani_to_json(const ShintaniResult& r, const std::string& label);
json jl_to_json(const JlResult& r);
json catalog_to_json(const std::vector<Packet>& packets, const PacketOptions& opt,
                     bool with_ktype);
std::string counts_to_csv(const PacketCounts& c, int q);

/// FNV-1a, for the determinism checks.
std::string hash_hex(const std::string& bytes);

} // namespace rbc
