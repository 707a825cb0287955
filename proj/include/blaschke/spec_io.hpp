#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "blaschke/hypgeo.hpp"
#include "blaschke/maps.hpp"

namespace blaschke {

using json = nlohmann::json;

/// Parses a function spec:
///   {"type":"blaschke","lambda":[re,im],"zeros":[[re,im],...]}
///   {"type":"automorphism","theta":t,"a":[re,im]}
///   {"type":"rational","num":[c0,c1,...],"den":[...]}   (coefficients real or [re,im], lowest degree first)
///   {"type":"compose","outer":{...},"inner":{...}}
/// Errors are SpecError carrying the JSON path of the offending element;
/// non-self-maps are rejected with InvalidMapError.
MapExpr parse_function_spec(const json& j, const std::string& path = "$");
MapExpr parse_function_spec_file(const std::filesystem::path& file);
json to_json(const MapExpr& e);

cplx parse_complex(const json& j, const std::string& path);
json complex_json(cplx z);

json to_json(const Region& r);
Region parse_region(const json& j, const std::string& path = "$");
json to_json(const NontangentialSequence& s);

/// index,re,im rows with a header line.
void write_curve_csv(std::ostream& os, const Curve& c);

}  // namespace blaschke
