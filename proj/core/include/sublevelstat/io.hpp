#pragma once

#include "sublevelstat/estimator.hpp"
#include "sublevelstat/mesh.hpp"
#include "sublevelstat/persistence.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace sublevelstat {

std::string read_text_file(const std::filesystem::path& path);

/// Creates parent directories as needed. Throws IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

// Mesh files:
//   sublevelstat-mesh v1 <variant> <params...> <resolution>
//   V E F
//   V lines of chart coordinates
//   F lines of three 0-based vertex ids
std::string format_mesh(const Mesh& mesh);
Mesh parse_mesh(const std::string& text);

/// FNV-1a of the canonical mesh file bytes.
std::uint64_t mesh_hash(const Mesh& mesh);

// Vertex field files:
//   sublevelstat-field v1
//   <mesh hash, 16 hex digits>
//   one value per line
struct VertexFieldFile
{
  std::uint64_t mesh_hash = 0;
  std::vector<double> values;
};

std::string format_field(std::uint64_t mesh_hash, std::span<const double> values);
VertexFieldFile parse_field(const std::string& text);

/// Parses the field and checks it against the mesh (hash and vertex count).
/// Throws InvalidInput on mismatch.
std::vector<double> field_for_mesh(const std::string& text, const Mesh& mesh);

// Diagram CSV: header "degree,birth,death,multiplicity", death "inf" for
// essential classes, rows sorted by (degree, birth, death).
std::string format_diagram_csv(const PersistenceDiagram& d);
PersistenceDiagram parse_diagram_csv(const std::string& text);

/// Birth/death scatter per degree with the diagonal; essential classes are
/// drawn on a dashed line above the plot.
std::string diagram_svg(const PersistenceDiagram& d);

// Sample CSV: header "x1,x2[,x3],y" with chart coordinates then response.
std::string format_sample_csv(const DesignSample& sample, const Manifold& m);
DesignSample parse_sample_csv(const std::string& text, const Manifold& m);

// Model dump: "sublevelstat-model v1" followed by key lines and one
// "center <coords...> <value>" line per cell.
std::string format_model(const EstimatorModel& model);
EstimatorModel parse_model(const std::string& text);

} // namespace sublevelstat
