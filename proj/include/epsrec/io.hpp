#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "epsrec/coeff_mesh.hpp"
#include "epsrec/field.hpp"
#include "epsrec/trace.hpp"

namespace epsrec::io {

/// Shortest round-trip decimal formatting ("%.17g"-style, trimmed); all CSV
/// output goes through this so identical values give identical bytes.
std::string format_double(double x);

/// Legacy-VTK structured-points ASCII file with one scalar field.
void write_vtk_field(const std::string& path, const UniformGrid& grid,
                     const NodeField& field, const std::string& name);

/// Trace file: header `x,y,z,t,u`, one row per (node, time) sample.
void write_traces_csv(const std::string& path, const TimeTraces& traces);
TimeTraces read_traces_csv(const std::string& path);

/// Coefficient cells: header `lo0,lo1,lo2,hi0,hi1,hi2,level,value`.
void write_cells_csv(const std::string& path, const QuadtreeCoeffMesh& mesh);

/// Rebuilds a mesh by replaying refinement against the stored cell boxes;
/// `templ` supplies domain/root layout/max level.
QuadtreeCoeffMesh read_cells_csv(const std::string& path,
                                 const QuadtreeCoeffMesh& templ);

/// Generic CSV writer: rows of preformatted fields, LF endings.
void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

uint64_t fnv1a_file(const std::string& path);

}  // namespace epsrec::io
