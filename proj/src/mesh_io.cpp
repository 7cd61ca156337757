// Copyright 2026 The dmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dmc/mesh_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace dmc {

namespace {

std::string lower_ext(const std::string& path) {
  std::string ext = fs::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  return ext;
}

MeshFormat format_from_path(const std::string& path) {
  const std::string ext = lower_ext(path);
  if (ext == ".off") return MeshFormat::Off;
  if (ext == ".obj") return MeshFormat::Obj;
  throw ParseError(path + ": unsupported mesh extension '" + ext + "' (use .off or .obj)");
}

[[noreturn]] void fail_at(const std::string& path, size_t line, const std::string& what) {
  throw ParseError(path + ":" + std::to_string(line) + ": " + what);
}

// Strips comments and returns whitespace tokens.
std::vector<std::string> tokenize(const std::string& line, char comment) {
  std::string body = line;
  if (const size_t pos = body.find(comment); pos != std::string::npos) body.resize(pos);
  std::istringstream in(body);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

double parse_double(const std::string& tok, const std::string& path, size_t line) {
  size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(tok, &used);
  } catch (const std::exception&) {
    fail_at(path, line, "expected a number, got '" + tok + "'");
  }
  if (used != tok.size()) fail_at(path, line, "expected a number, got '" + tok + "'");
  return value;
}

long parse_long(const std::string& tok, const std::string& path, size_t line) {
  size_t used = 0;
  long value = 0;
  try {
    value = std::stol(tok, &used);
  } catch (const std::exception&) {
    fail_at(path, line, "expected an integer, got '" + tok + "'");
  }
  if (used != tok.size()) fail_at(path, line, "expected an integer, got '" + tok + "'");
  return value;
}

LoadedMesh load_off(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  size_t lineno = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++lineno;
    header = tokenize(line, '#');
  }
  if (header.empty() || header[0] != "OFF") fail_at(path, lineno, "missing OFF header");
  header.erase(header.begin());

  // Counts may share the header line or follow on their own.
  while (header.empty() && std::getline(in, line)) {
    ++lineno;
    header = tokenize(line, '#');
  }
  if (header.size() < 2) fail_at(path, lineno, "missing vertex/face counts");
  const long nv = parse_long(header[0], path, lineno);
  const long nf = parse_long(header[1], path, lineno);
  if (nv < 1 || nf < 0) fail_at(path, lineno, "bad counts");

  LoadedMesh mesh;
  mesh.vertices.resize(nv, 3);
  long read_vertices = 0;
  long read_faces = 0;
  mesh.faces.reserve(static_cast<size_t>(nf));
  while ((read_vertices < nv || read_faces < nf) && std::getline(in, line)) {
    ++lineno;
    const std::vector<std::string> tokens = tokenize(line, '#');
    if (tokens.empty()) continue;
    if (read_vertices < nv) {
      if (tokens.size() < 3) fail_at(path, lineno, "vertex line needs 3 coordinates");
      for (int a = 0; a < 3; ++a) {
        mesh.vertices(read_vertices, a) = parse_double(tokens[a], path, lineno);
      }
      ++read_vertices;
    } else {
      if (tokens.size() < 4) fail_at(path, lineno, "face line needs a count and 3 indices");
      if (parse_long(tokens[0], path, lineno) != 3) {
        fail_at(path, lineno, "only triangle faces are supported");
      }
      Face f;
      for (int j = 0; j < 3; ++j) {
        const long idx = parse_long(tokens[j + 1], path, lineno);
        if (idx < 0 || idx >= nv) fail_at(path, lineno, "face index out of range");
        f[j] = static_cast<uint32_t>(idx);
      }
      mesh.faces.push_back(f);
      ++read_faces;
    }
  }
  if (read_vertices != nv || read_faces != nf) {
    fail_at(path, lineno, "file ends before all vertices/faces were read");
  }
  return mesh;
}

uint32_t parse_obj_index(const std::string& tok, long nv, const std::string& path,
                         size_t line) {
  const std::string head = tok.substr(0, tok.find('/'));
  const long idx = parse_long(head, path, line);
  if (idx < 0) fail_at(path, line, "negative OBJ indices are not supported");
  if (idx == 0 || idx > nv) fail_at(path, line, "face index out of range");
  return static_cast<uint32_t>(idx - 1);
}

LoadedMesh load_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  size_t lineno = 0;
  std::vector<Eigen::Vector3d> vertices;
  struct PendingFace {
    std::array<std::string, 3> tokens;
    size_t line;
  };
  std::vector<PendingFace> pending;
  while (std::getline(in, line)) {
    ++lineno;
    const std::vector<std::string> tokens = tokenize(line, '#');
    if (tokens.empty()) continue;
    if (tokens[0] == "v") {
      if (tokens.size() < 4) fail_at(path, lineno, "v record needs 3 coordinates");
      vertices.emplace_back(parse_double(tokens[1], path, lineno),
                            parse_double(tokens[2], path, lineno),
                            parse_double(tokens[3], path, lineno));
    } else if (tokens[0] == "f") {
      if (tokens.size() != 4) fail_at(path, lineno, "only triangle faces are supported");
      pending.push_back({{tokens[1], tokens[2], tokens[3]}, lineno});
    }
    // vn/vt/usemtl/o/g/s and friends are ignored.
  }
  if (vertices.empty()) fail_at(path, lineno, "no vertices found");
  LoadedMesh mesh;
  mesh.vertices.resize(static_cast<Eigen::Index>(vertices.size()), 3);
  for (size_t i = 0; i < vertices.size(); ++i) mesh.vertices.row(i) = vertices[i].transpose();
  const long nv = static_cast<long>(vertices.size());
  mesh.faces.reserve(pending.size());
  for (const PendingFace& pf : pending) {
    Face f;
    for (int j = 0; j < 3; ++j) f[j] = parse_obj_index(pf.tokens[j], nv, path, pf.line);
    mesh.faces.push_back(f);
  }
  return mesh;
}

// %.17g round-trips doubles exactly through text.
void append_coord(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

std::string render_off(const Eigen::MatrixXd& vertices, const std::vector<Face>& faces) {
  std::string out = "OFF\n";
  out += std::to_string(vertices.rows()) + " " + std::to_string(faces.size()) + " 0\n";
  for (Eigen::Index i = 0; i < vertices.rows(); ++i) {
    append_coord(out, vertices(i, 0));
    out += ' ';
    append_coord(out, vertices(i, 1));
    out += ' ';
    append_coord(out, vertices(i, 2));
    out += '\n';
  }
  for (const Face& f : faces) {
    out += "3 " + std::to_string(f[0]) + " " + std::to_string(f[1]) + " " +
           std::to_string(f[2]) + "\n";
  }
  return out;
}

std::string render_obj(const Eigen::MatrixXd& vertices, const std::vector<Face>& faces) {
  std::string out;
  for (Eigen::Index i = 0; i < vertices.rows(); ++i) {
    out += "v ";
    append_coord(out, vertices(i, 0));
    out += ' ';
    append_coord(out, vertices(i, 1));
    out += ' ';
    append_coord(out, vertices(i, 2));
    out += '\n';
  }
  for (const Face& f : faces) {
    out += "f " + std::to_string(f[0] + 1) + " " + std::to_string(f[1] + 1) + " " +
           std::to_string(f[2] + 1) + "\n";
  }
  return out;
}

// Accepts exactly one %d / %0<width>d placeholder.
struct FramePattern {
  std::string prefix;
  std::string suffix;
  int width = 0;
  bool zero_pad = false;
};

std::optional<FramePattern> parse_frame_pattern(const std::string& pattern) {
  const size_t pos = pattern.find('%');
  if (pos == std::string::npos) return std::nullopt;
  FramePattern fp;
  fp.prefix = pattern.substr(0, pos);
  size_t i = pos + 1;
  if (i < pattern.size() && pattern[i] == '0') {
    fp.zero_pad = true;
    ++i;
  }
  while (i < pattern.size() && std::isdigit(static_cast<unsigned char>(pattern[i]))) {
    fp.width = fp.width * 10 + (pattern[i] - '0');
    ++i;
  }
  if (i >= pattern.size() || pattern[i] != 'd') {
    throw IoError("pattern '" + pattern + "' must contain a single %d placeholder");
  }
  fp.suffix = pattern.substr(i + 1);
  if (fp.suffix.find('%') != std::string::npos) {
    throw IoError("pattern '" + pattern + "' must contain a single %d placeholder");
  }
  return fp;
}

std::string instantiate(const FramePattern& fp, long frame) {
  std::string digits = std::to_string(frame);
  if (static_cast<int>(digits.size()) < fp.width) {
    digits.insert(0, fp.width - digits.size(), fp.zero_pad ? '0' : ' ');
  }
  return fp.prefix + digits + fp.suffix;
}

bool wildcard_match(const std::string& pattern, const std::string& text) {
  size_t p = 0, t = 0, star = std::string::npos, match = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      match = t;
    } else if (star != std::string::npos) {
      p = star + 1;
      t = ++match;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

}  // namespace

LoadedMesh load_mesh(const std::string& path) {
  return format_from_path(path) == MeshFormat::Off ? load_off(path) : load_obj(path);
}

void save_mesh(const std::string& path, const Eigen::MatrixXd& vertices,
               const std::vector<Face>& faces) {
  if (vertices.cols() != 3) throw DimensionMismatch("vertex matrix must be n x 3");
  const std::string text = format_from_path(path) == MeshFormat::Off
                               ? render_off(vertices, faces)
                               : render_obj(vertices, faces);
  write_file_atomic(path, text);
}

std::vector<std::string> expand_input_pattern(const std::string& input) {
  if (input.find('%') != std::string::npos) {
    const FramePattern fp = *parse_frame_pattern(input);
    std::vector<std::string> paths;
    for (long start : {0L, 1L}) {
      for (long f = start; fs::exists(instantiate(fp, f)); ++f) {
        paths.push_back(instantiate(fp, f));
      }
      if (!paths.empty()) break;
    }
    if (paths.empty()) throw IoError("pattern '" + input + "' matches no files");
    return paths;
  }
  if (lower_ext(input) == ".txt") {
    std::ifstream in(input);
    if (!in) throw IoError("cannot open manifest " + input);
    const fs::path base = fs::path(input).parent_path();
    std::vector<std::string> paths;
    std::string line;
    while (std::getline(in, line)) {
      const std::vector<std::string> tokens = tokenize(line, '#');
      if (tokens.empty()) continue;
      fs::path p(tokens[0]);
      paths.push_back(p.is_absolute() ? p.string() : (base / p).string());
    }
    if (paths.empty()) throw IoError("manifest " + input + " lists no frames");
    return paths;
  }
  if (input.find('*') != std::string::npos || input.find('?') != std::string::npos) {
    const fs::path full(input);
    const fs::path dir = full.parent_path().empty() ? fs::path(".") : full.parent_path();
    const std::string name_pattern = full.filename().string();
    std::vector<std::string> paths;
    if (fs::is_directory(dir)) {
      for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() &&
            wildcard_match(name_pattern, entry.path().filename().string())) {
          paths.push_back(entry.path().string());
        }
      }
    }
    // Frame order must be unambiguous: lexicographic by filename.
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) throw IoError("pattern '" + input + "' matches no files");
    return paths;
  }
  if (!fs::exists(input)) throw IoError("no such file: " + input);
  return {input};
}

MeshSequence load_sequence(const std::vector<std::string>& paths) {
  if (paths.empty()) throw IoError("no frame files given");
  std::vector<Eigen::MatrixXd> frames;
  frames.reserve(paths.size());
  std::vector<Face> faces;
  for (size_t i = 0; i < paths.size(); ++i) {
    LoadedMesh mesh = load_mesh(paths[i]);
    if (i == 0) {
      faces = std::move(mesh.faces);
    } else {
      if (mesh.vertices.rows() != frames[0].rows()) {
        throw VertexCountMismatch("frame " + std::to_string(i + 1) + " (" + paths[i] +
                                  ") has " + std::to_string(mesh.vertices.rows()) +
                                  " vertices, expected " + std::to_string(frames[0].rows()));
      }
      if (mesh.faces != faces) {
        throw ConnectivityMismatch("frame " + std::to_string(i + 1) + " (" + paths[i] +
                                   ") has a different face list");
      }
    }
    frames.push_back(std::move(mesh.vertices));
  }
  return MeshSequence::from_frames(std::move(faces), frames);
}

std::vector<std::string> save_sequence(const MeshSequence& s, const std::string& pattern) {
  const auto fp = parse_frame_pattern(pattern);
  if (!fp && s.k() != 1) {
    throw IoError("pattern '" + pattern + "' needs a %d placeholder for k > 1");
  }
  std::vector<std::string> written;
  for (int f = 0; f < s.k(); ++f) {
    const std::string path = fp ? instantiate(*fp, f) : pattern;
    save_mesh(path, s.frame(f), s.faces());
    written.push_back(path);
  }
  return written;
}

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for " + path);
  return bytes;
}

void write_file_atomic(const std::string& path, const void* data, size_t size) {
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create " + tmp.string());
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw IoError("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw IoError("cannot move " + tmp.string() + " into place: " + ec.message());
  }
}

void write_file_atomic(const std::string& path, const std::vector<uint8_t>& bytes) {
  write_file_atomic(path, bytes.data(), bytes.size());
}

void write_file_atomic(const std::string& path, const std::string& text) {
  write_file_atomic(path, text.data(), text.size());
}

}  // namespace dmc
