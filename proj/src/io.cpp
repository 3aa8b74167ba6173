#include "epsrec/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace epsrec::io {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  // try shorter representations that round-trip
  for (int prec = 1; prec < 17; ++prec) {
    char cand[40];
    std::snprintf(cand, sizeof cand, "%.*g", prec, x);
    double back;
    std::sscanf(cand, "%lf", &back);
    if (back == x) return cand;
  }
  return buf;
}

void write_vtk_field(const std::string& path, const UniformGrid& grid,
                     const NodeField& field, const std::string& name) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::Io, "cannot open " + path);
  os << "# vtk DataFile Version 3.0\n";
  os << name << "\n";
  os << "ASCII\n";
  os << "DATASET STRUCTURED_POINTS\n";
  os << "DIMENSIONS " << grid.counts[0] << " " << grid.counts[1] << " "
     << grid.counts[2] << "\n";
  os << "ORIGIN " << format_double(grid.domain.lo[0]) << " "
     << format_double(grid.domain.lo[1]) << " "
     << format_double(grid.domain.lo[2]) << "\n";
  os << "SPACING " << format_double(grid.spacing[0]) << " "
     << format_double(grid.spacing[1]) << " "
     << format_double(grid.dim() == 3 ? grid.spacing[2] : 1.0) << "\n";
  os << "POINT_DATA " << grid.total_nodes() << "\n";
  os << "SCALARS " << name << " double 1\n";
  os << "LOOKUP_TABLE default\n";
  for (double x : field.v) os << format_double(x) << "\n";
  if (!os) throw Error(ErrorKind::Io, "write failed: " + path);
}

void write_traces_csv(const std::string& path, const TimeTraces& traces) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::Io, "cannot open " + path);
  os << "x,y,z,t,u\n";
  for (size_t j = 0; j < traces.nodes.size(); ++j) {
    const Coord& p = traces.nodes[j];
    std::string prefix = format_double(p[0]) + "," + format_double(p[1]) +
                         "," + format_double(p[2]) + ",";
    for (int k = 0; k <= traces.axis.steps; ++k) {
      os << prefix << format_double(traces.axis.time(k)) << ","
         << format_double(traces.samples.at(k, static_cast<int>(j))) << "\n";
    }
  }
  if (!os) throw Error(ErrorKind::Io, "write failed: " + path);
}

TimeTraces read_traces_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::Io, "cannot open " + path);
  std::string line;
  if (!std::getline(is, line))
    throw Error(ErrorKind::Io, "empty trace file " + path);
  struct ColData {
    Coord p;
    std::vector<double> t, u;
  };
  std::vector<ColData> cols;
  std::map<std::string, size_t> index;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    double vals[5];
    for (int i = 0; i < 5; ++i) {
      if (!std::getline(ls, tok, i < 4 ? ',' : '\n'))
        throw Error(ErrorKind::Io, "malformed trace row in " + path);
      vals[i] = std::stod(tok);
    }
    std::string key = std::to_string(vals[0]) + "|" + std::to_string(vals[1]) +
                      "|" + std::to_string(vals[2]);
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(key, cols.size());
      cols.push_back({{vals[0], vals[1], vals[2]}, {}, {}});
      it = index.find(key);
    }
    cols[it->second].t.push_back(vals[3]);
    cols[it->second].u.push_back(vals[4]);
  }
  if (cols.empty()) throw Error(ErrorKind::Io, "no samples in " + path);
  size_t nt = cols[0].t.size();
  for (const auto& c : cols)
    if (c.t.size() != nt)
      throw Error(ErrorKind::Io, "ragged trace columns in " + path);
  TimeTraces out;
  out.axis =
      TimeAxis::with_steps(cols[0].t.back(), static_cast<int>(nt) - 1);
  out.samples = TraceMatrix(static_cast<int>(nt), static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    out.nodes.push_back(cols[j].p);
    for (size_t k = 0; k < nt; ++k)
      out.samples.at(static_cast<int>(k), static_cast<int>(j)) = cols[j].u[k];
  }
  return out;
}

void write_cells_csv(const std::string& path, const QuadtreeCoeffMesh& mesh) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::Io, "cannot open " + path);
  os << "lo0,lo1,lo2,hi0,hi1,hi2,level,value\n";
  for (int i = 0; i < mesh.n_leaves(); ++i) {
    RectDomain b = mesh.leaf_box(i);
    os << format_double(b.lo[0]) << "," << format_double(b.lo[1]) << ","
       << format_double(b.lo[2]) << "," << format_double(b.hi[0]) << ","
       << format_double(b.hi[1]) << "," << format_double(b.hi[2]) << ","
       << mesh.leaf_level(i) << "," << format_double(mesh.value(i)) << "\n";
  }
  if (!os) throw Error(ErrorKind::Io, "write failed: " + path);
}

QuadtreeCoeffMesh read_cells_csv(const std::string& path,
                                 const QuadtreeCoeffMesh& templ) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::Io, "cannot open " + path);
  std::string line;
  std::getline(is, line);
  struct Row {
    Coord lo, hi;
    int level;
    double value;
  };
  std::vector<Row> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    double vals[8];
    for (int i = 0; i < 8; ++i) {
      if (!std::getline(ls, tok, i < 7 ? ',' : '\n'))
        throw Error(ErrorKind::Io, "malformed cell row in " + path);
      vals[i] = std::stod(tok);
    }
    rows.push_back({{vals[0], vals[1], vals[2]},
                    {vals[3], vals[4], vals[5]},
                    static_cast<int>(vals[6]),
                    vals[7]});
  }
  QuadtreeCoeffMesh mesh = templ;
  // refine until every stored cell exists, deepest first by level
  int maxlev = 0;
  for (const auto& r : rows) maxlev = std::max(maxlev, r.level);
  for (int lev = 0; lev < maxlev; ++lev) {
    std::vector<int> marked;
    for (const auto& r : rows) {
      if (r.level <= lev) continue;
      Coord c{0, 0, 0};
      for (int a = 0; a < mesh.dim(); ++a) c[a] = 0.5 * (r.lo[a] + r.hi[a]);
      int id = mesh.locate(c);
      if (mesh.leaf_level(id) == lev) marked.push_back(id);
    }
    std::sort(marked.begin(), marked.end());
    marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
    if (marked.empty()) break;
    mesh = refine_cells(mesh, marked).mesh;
  }
  for (const auto& r : rows) {
    Coord c{0, 0, 0};
    for (int a = 0; a < mesh.dim(); ++a) c[a] = 0.5 * (r.lo[a] + r.hi[a]);
    int id = mesh.locate(c);
    if (mesh.leaf_level(id) != r.level)
      throw Error(ErrorKind::Io, "cell layout mismatch reading " + path);
    mesh.set_value(id, r.value);
  }
  return mesh;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::Io, "cannot open " + path);
  for (size_t i = 0; i < header.size(); ++i)
    os << header[i] << (i + 1 < header.size() ? "," : "");
  os << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i)
      os << row[i] << (i + 1 < row.size() ? "," : "");
    os << "\n";
  }
  if (!os) throw Error(ErrorKind::Io, "write failed: " + path);
}

uint64_t fnv1a_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::Io, "cannot open " + path);
  uint64_t h = 1469598103934665603ull;
  char c;
  while (is.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace epsrec::io
