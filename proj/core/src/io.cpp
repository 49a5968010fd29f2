#include "sublevelstat/io.hpp"

#include "sublevelstat/errors.hpp"
#include "sublevelstat/format.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sublevelstat {

std::string read_text_file(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& contents)
{
  std::error_code ec;
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot open '" + path.string() + "' for writing");
  out << contents;
  if (!out.flush())
    throw IoError("failed writing '" + path.string() + "'");
}

namespace {

/// Line reader that keeps track of 1-based line numbers.
class Lines
{
public:
  explicit Lines(const std::string& text)
    : in_(text)
  {
  }

  bool next(std::string& line)
  {
    if (!std::getline(in_, line))
      return false;
    ++number_;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    return true;
  }

  std::string require(const char* what)
  {
    std::string line;
    if (!next(line))
      throw ParseError(std::string("unexpected end of input, expected ") + what, number_ + 1);
    return line;
  }

  std::size_t number() const noexcept { return number_; }

private:
  std::istringstream in_;
  std::size_t number_ = 0;
};

std::vector<std::string> words(const std::string& line)
{
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;)
    out.push_back(w);
  return out;
}

std::size_t parameter_count(const std::string& variant, std::size_t line)
{
  if (variant == "disk")
    return 1;
  if (variant == "sphere")
    return 0;
  if (variant == "torus")
    return 2;
  throw ParseError("unknown mesh variant '" + variant + "'", line);
}

} // namespace

std::string format_mesh(const Mesh& mesh)
{
  std::string out = "sublevelstat-mesh v1 " + mesh.manifold.name();
  auto params = mesh.manifold.parameters();
  if (!params.empty())
    out += " " + params;
  out += " " + std::to_string(mesh.resolution) + "\n";
  out += std::to_string(mesh.vertices.size()) + " " + std::to_string(mesh.edges().size()) +
         " " + std::to_string(mesh.triangles.size()) + "\n";
  for (const auto& v : mesh.vertices) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i)
        out += ' ';
      out += format_real(v[i]);
    }
    out += '\n';
  }
  for (const auto& t : mesh.triangles)
    out += std::to_string(t[0]) + " " + std::to_string(t[1]) + " " + std::to_string(t[2]) + "\n";
  return out;
}

Mesh parse_mesh(const std::string& text)
{
  Lines lines(text);
  auto header = words(lines.require("mesh header"));
  if (header.size() < 3 || header[0] != "sublevelstat-mesh" || header[1] != "v1")
    throw ParseError("not a sublevelstat-mesh v1 file", 1);
  const auto& variant = header[2];
  std::size_t nparams = parameter_count(variant, 1);
  if (header.size() != 3 + nparams + 1)
    throw ParseError("mesh header has the wrong number of parameters", 1);

  std::string manifold_text = variant;
  for (std::size_t i = 0; i < nparams; ++i)
    manifold_text += " " + header[3 + i];
  Manifold manifold = Manifold::sphere();
  try {
    manifold = parse_manifold(manifold_text);
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), 1);
  }
  Mesh mesh{ manifold, {}, {}, static_cast<int>(parse_u64(header.back(), 1)) };

  auto counts = words(lines.require("V E F counts"));
  if (counts.size() != 3)
    throw ParseError("expected 'V E F'", lines.number());
  auto nv = parse_u64(counts[0], lines.number());
  auto ne = parse_u64(counts[1], lines.number());
  auto nf = parse_u64(counts[2], lines.number());

  const auto chart = static_cast<std::size_t>(manifold.chart_size());
  mesh.vertices.reserve(nv);
  for (std::uint64_t i = 0; i < nv; ++i) {
    auto f = words(lines.require("vertex line"));
    if (f.size() != chart)
      throw ParseError("vertex line has the wrong number of coordinates", lines.number());
    double x = parse_real(f[0], lines.number());
    double y = parse_real(f[1], lines.number());
    Point p = chart == 3 ? Point(x, y, parse_real(f[2], lines.number())) : Point(x, y);
    if (!on_manifold(manifold, p))
      throw ParseError("vertex is not on the " + manifold.name(), lines.number());
    mesh.vertices.push_back(p);
  }
  mesh.triangles.reserve(nf);
  for (std::uint64_t i = 0; i < nf; ++i) {
    auto f = words(lines.require("face line"));
    if (f.size() != 3)
      throw ParseError("face line needs three vertex ids", lines.number());
    Triangle t{};
    for (int k = 0; k < 3; ++k) {
      auto id = parse_u64(f[k], lines.number());
      if (id >= nv)
        throw ParseError("face references a vertex id out of range", lines.number());
      t[k] = static_cast<std::uint32_t>(id);
    }
    mesh.triangles.push_back(t);
  }
  std::string rest;
  while (lines.next(rest))
    if (!trim(rest).empty())
      throw ParseError("trailing content after faces", lines.number());
  if (mesh.edges().size() != ne)
    throw ParseError("edge count in header does not match faces", 2);
  return mesh;
}

std::uint64_t mesh_hash(const Mesh& mesh)
{
  return fnv1a64(format_mesh(mesh));
}

std::string format_field(std::uint64_t hash, std::span<const double> values)
{
  std::string out = "sublevelstat-field v1\n" + to_hex(hash) + "\n";
  for (double v : values)
    out += format_real(v) + "\n";
  return out;
}

VertexFieldFile parse_field(const std::string& text)
{
  Lines lines(text);
  if (trim(lines.require("field header")) != "sublevelstat-field v1")
    throw ParseError("not a sublevelstat-field v1 file", 1);
  auto hash_text = std::string(trim(lines.require("mesh hash")));
  VertexFieldFile f;
  if (hash_text.size() != 16 ||
      hash_text.find_first_not_of("0123456789abcdef") != std::string::npos)
    throw ParseError("mesh hash must be 16 lowercase hex digits", 2);
  f.mesh_hash = std::stoull(hash_text, nullptr, 16);
  std::string line;
  while (lines.next(line)) {
    if (trim(line).empty())
      continue;
    double v = parse_real(line, lines.number());
    if (!std::isfinite(v))
      throw ParseError("field value must be finite", lines.number());
    f.values.push_back(v);
  }
  return f;
}

std::vector<double> field_for_mesh(const std::string& text, const Mesh& mesh)
{
  auto f = parse_field(text);
  if (f.mesh_hash != mesh_hash(mesh))
    throw InvalidInput("field was computed for a different mesh (hash " +
                       to_hex(f.mesh_hash) + ", mesh " + to_hex(mesh_hash(mesh)) + ")");
  if (f.values.size() != mesh.vertices.size())
    throw InvalidInput("field has " + std::to_string(f.values.size()) + " values, mesh has " +
                       std::to_string(mesh.vertices.size()) + " vertices");
  return std::move(f.values);
}

std::string format_diagram_csv(const PersistenceDiagram& d)
{
  std::string out = "degree,birth,death,multiplicity\n";
  for (const auto& p : d.pairs())
    out += std::to_string(p.degree) + "," + format_real(p.birth) + "," + format_real(p.death) +
           "," + std::to_string(p.multiplicity) + "\n";
  return out;
}

PersistenceDiagram parse_diagram_csv(const std::string& text)
{
  Lines lines(text);
  if (trim(lines.require("CSV header")) != "degree,birth,death,multiplicity")
    throw ParseError("expected header 'degree,birth,death,multiplicity'", 1);
  std::vector<PersistencePair> pairs;
  std::string line;
  while (lines.next(line)) {
    if (trim(line).empty())
      continue;
    auto cells = split(line, ',');
    if (cells.size() != 4)
      throw ParseError("expected 4 comma-separated fields", lines.number());
    PersistencePair p;
    p.degree = static_cast<int>(parse_u64(cells[0], lines.number()));
    p.birth = parse_real(cells[1], lines.number());
    p.death = parse_real(cells[2], lines.number());
    p.multiplicity = parse_u64(cells[3], lines.number());
    pairs.push_back(p);
  }
  try {
    return PersistenceDiagram::from_pairs(std::move(pairs));
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), lines.number());
  }
}

std::string diagram_svg(const PersistenceDiagram& d)
{
  double lo = 0.0;
  double hi = 1.0;
  bool first = true;
  for (const auto& p : d.pairs()) {
    double top = p.essential() ? p.birth : p.death;
    if (first) {
      lo = p.birth;
      hi = top;
      first = false;
    }
    lo = std::min(lo, p.birth);
    hi = std::max(hi, top);
  }
  if (hi - lo < 1e-12)
    hi = lo + 1.0;
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;

  constexpr double size = 400.0;
  constexpr double margin = 40.0;
  auto sx = [&](double v) { return margin + (v - lo) / (hi - lo) * size; };
  auto sy = [&](double v) { return margin + size - (v - lo) / (hi - lo) * size; };
  const char* colors[] = { "#1f77b4", "#d62728", "#2ca02c", "#9467bd" };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * margin
      << "\" height=\"" << size + 2 * margin << "\">\n";
  out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size
      << "\" height=\"" << size << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << sx(lo) << "\" y1=\"" << sy(lo) << "\" x2=\"" << sx(hi) << "\" y2=\""
      << sy(hi) << "\" stroke=\"gray\"/>\n";
  const double inf_y = margin / 2;
  out << "<line x1=\"" << margin << "\" y1=\"" << inf_y << "\" x2=\"" << margin + size
      << "\" y2=\"" << inf_y << "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
  out << "<text x=\"" << margin + size + 4 << "\" y=\"" << inf_y + 4 << "\" font-size=\"12\">inf</text>\n";
  for (const auto& p : d.pairs()) {
    const char* color = colors[std::min<std::size_t>(static_cast<std::size_t>(p.degree), 3)];
    double y = p.essential() ? inf_y : sy(p.death);
    out << "<circle cx=\"" << sx(p.birth) << "\" cy=\"" << y << "\" r=\""
        << 3 + std::min<std::size_t>(p.multiplicity - 1, 5) << "\" fill=\"" << color
        << "\"><title>H" << p.degree << " (" << format_real(p.birth) << ", "
        << format_real(p.death) << ") x" << p.multiplicity << "</title></circle>\n";
  }
  out << "<text x=\"" << margin + size / 2 << "\" y=\"" << size + 2 * margin - 8
      << "\" font-size=\"12\" text-anchor=\"middle\">birth</text>\n";
  out << "<text x=\"12\" y=\"" << margin + size / 2
      << "\" font-size=\"12\" transform=\"rotate(-90 12 " << margin + size / 2
      << ")\" text-anchor=\"middle\">death</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string format_sample_csv(const DesignSample& sample, const Manifold& m)
{
  std::string out = m.chart_size() == 3 ? "x1,x2,x3,y\n" : "x1,x2,y\n";
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (double c : sample.points[i].coords())
      out += format_real(c) + ",";
    out += format_real(sample.responses[i]) + "\n";
  }
  return out;
}

DesignSample parse_sample_csv(const std::string& text, const Manifold& m)
{
  Lines lines(text);
  const std::size_t chart = static_cast<std::size_t>(m.chart_size());
  const std::string expected = chart == 3 ? "x1,x2,x3,y" : "x1,x2,y";
  if (trim(lines.require("CSV header")) != expected)
    throw ParseError("expected header '" + expected + "' for the " + m.name(), 1);
  DesignSample sample;
  std::string line;
  while (lines.next(line)) {
    if (trim(line).empty())
      continue;
    auto cells = split(line, ',');
    if (cells.size() != chart + 1)
      throw ParseError("expected " + std::to_string(chart + 1) + " fields", lines.number());
    double x = parse_real(cells[0], lines.number());
    double y = parse_real(cells[1], lines.number());
    Point p = chart == 3 ? Point(x, y, parse_real(cells[2], lines.number())) : Point(x, y);
    p = canonical_point(m, p);
    if (!on_manifold(m, p))
      throw ParseError("design point is not on the " + m.name(), lines.number());
    double response = parse_real(cells[chart], lines.number());
    if (!std::isfinite(response))
      throw ParseError("response must be finite", lines.number());
    sample.points.push_back(p);
    sample.responses.push_back(response);
  }
  return sample;
}

std::string format_model(const EstimatorModel& model)
{
  const auto& c = model.config;
  std::ostringstream out;
  out << "sublevelstat-model v1\n";
  auto params = c.manifold.parameters();
  out << "manifold " << c.manifold.name() << (params.empty() ? "" : " " + params) << "\n";
  out << "beta " << format_real(c.beta) << "\n";
  out << "L " << format_real(c.L) << "\n";
  out << "sigma " << format_real(c.sigma) << "\n";
  out << "delta " << format_real(c.delta) << "\n";
  out << "n " << c.n << "\n";
  out << "psi " << format_real(model.psi) << "\n";
  out << "c0 " << format_real(model.c0) << "\n";
  out << "kappa " << format_real(model.kappa) << "\n";
  out << "requested_centers " << model.requested_centers << "\n";
  out << "centers " << model.centers.size() << "\n";
  for (std::size_t j = 0; j < model.centers.size(); ++j) {
    out << "center";
    for (double x : model.centers[j].coords())
      out << " " << format_real(x);
    out << " " << format_real(model.values[j]) << "\n";
  }
  return out.str();
}

EstimatorModel parse_model(const std::string& text)
{
  Lines lines(text);
  if (trim(lines.require("model header")) != "sublevelstat-model v1")
    throw ParseError("not a sublevelstat-model v1 file", 1);

  EstimatorModel model;
  auto field = [&](const char* key) {
    auto line = lines.require(key);
    auto w = words(line);
    if (w.empty() || w[0] != key)
      throw ParseError(std::string("expected '") + key + "'", lines.number());
    return w;
  };
  auto real = [&](const char* key) {
    auto w = field(key);
    if (w.size() != 2)
      throw ParseError(std::string("expected '") + key + " <value>'", lines.number());
    return parse_real(w[1], lines.number());
  };
  auto integer = [&](const char* key) {
    auto w = field(key);
    if (w.size() != 2)
      throw ParseError(std::string("expected '") + key + " <value>'", lines.number());
    return static_cast<std::size_t>(parse_u64(w[1], lines.number()));
  };

  auto mw = field("manifold");
  std::string mtext;
  for (std::size_t i = 1; i < mw.size(); ++i)
    mtext += (i > 1 ? " " : "") + mw[i];
  try {
    model.config.manifold = parse_manifold(mtext);
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), lines.number());
  }
  model.config.beta = real("beta");
  model.config.L = real("L");
  model.config.sigma = real("sigma");
  model.config.delta = real("delta");
  model.config.n = integer("n");
  model.psi = real("psi");
  model.c0 = real("c0");
  model.kappa = real("kappa");
  model.requested_centers = integer("requested_centers");
  const auto count = integer("centers");
  const auto chart = static_cast<std::size_t>(model.config.manifold.chart_size());
  for (std::size_t j = 0; j < count; ++j) {
    auto w = field("center");
    if (w.size() != chart + 2)
      throw ParseError("center line has the wrong number of fields", lines.number());
    double x = parse_real(w[1], lines.number());
    double y = parse_real(w[2], lines.number());
    Point p = chart == 3 ? Point(x, y, parse_real(w[3], lines.number())) : Point(x, y);
    model.centers.push_back(p);
    model.values.push_back(parse_real(w[chart + 1], lines.number()));
  }
  if (model.centers.empty())
    throw ParseError("model has no centers", lines.number());
  return model;
}

} // namespace sublevelstat
