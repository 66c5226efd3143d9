#include "polyfw/polytope_io.hpp"

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace polyfw {

namespace {

class Tokens {
 public:
  explicit Tokens(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) toks_.push_back(tok);
    }
  }

  bool done() const { return pos_ >= toks_.size(); }
  const std::string& peek() const {
    if (done()) throw InputError("polytope file: unexpected end of input");
    return toks_[pos_];
  }
  std::string word() {
    const std::string& t = peek();
    ++pos_;
    return t;
  }
  void expect(const std::string& w) {
    const std::string got = word();
    if (got != w) throw InputError("polytope file: expected '" + w + "', got '" + got + "'");
  }
  double number() {
    const std::string t = word();
    try {
      std::size_t used = 0;
      const double v = std::stod(t, &used);
      if (used != t.size() || !std::isfinite(v)) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw InputError("polytope file: expected a number, got '" + t + "'");
    }
  }
  int count() {
    const double v = number();
    if (v < 0 || v != std::floor(v) || v > 1e6) throw InputError("polytope file: expected a size");
    return static_cast<int>(v);
  }
  Mat matrix(int rows, int cols) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = number();
    return m;
  }
  Vec vector(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = number();
    return v;
  }

 private:
  std::vector<std::string> toks_;
  std::size_t pos_ = 0;
};

std::vector<double> split_numbers(const std::string& text) {
  std::string cleaned = text;
  for (char& c : cleaned) {
    if (c == ',' || c == ';') c = ' ';
  }
  std::istringstream in(cleaned);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw InputError("not a number: '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

Polytope parse_polytope(std::istream& in) {
  Tokens tk(in);
  const std::string kind = tk.word();
  Polytope poly = [&] {
    if (kind == "simplex") return Polytope::simplex(tk.count());
    if (kind == "box") {
      const int n = tk.count();
      Vec lo = Vec::Zero(n), hi = Vec::Ones(n);
      while (!tk.done() && (tk.peek() == "lower" || tk.peek() == "upper")) {
        const bool is_lower = tk.word() == "lower";
        const Vec bound = tk.vector(n);
        (is_lower ? lo : hi) = bound;
      }
      return Polytope::box(lo, hi);
    }
    if (kind == "l1ball") {
      const int n = tk.count();
      return Polytope::l1_ball(n, tk.number());
    }
    if (kind == "vrep") {
      const int count = tk.count(), n = tk.count();
      const Mat V = tk.matrix(count, n);
      std::vector<Vec> pts;
      for (int i = 0; i < count; ++i) pts.push_back(V.row(i).transpose());
      return Polytope::from_vertices(pts);
    }
    if (kind == "stdform") {
      const int m = tk.count(), n = tk.count();
      tk.expect("A");
      const Mat A = tk.matrix(m, n);
      tk.expect("b");
      const Vec b = tk.vector(m);
      return Polytope::standard_form(A, b);
    }
    if (kind == "hform") {
      const int m = tk.count(), k = tk.count(), n = tk.count();
      tk.expect("A");
      const Mat A = tk.matrix(m, n);
      tk.expect("b");
      const Vec b = tk.vector(m);
      tk.expect("D");
      const Mat D = tk.matrix(k, n);
      tk.expect("e");
      const Vec e = tk.vector(k);
      return Polytope::h_form(A, b, D, e);
    }
    throw InputError("unknown polytope kind '" + kind + "'");
  }();
  if (!tk.done()) throw InputError("polytope file: trailing token '" + tk.peek() + "'");
  return poly;
}

bool is_named_polytope(const std::string& name) {
  static const std::regex re("simplex[0-9]+|box[0-9]+|box_2x1|trunc3|l1ball[0-9]+|wolfe1");
  return std::regex_match(name, re);
}

Polytope named_polytope(const std::string& name) {
  if (!is_named_polytope(name)) throw InputError("unknown polytope name '" + name + "'");
  auto suffix = [&](std::size_t from) { return std::stoi(name.substr(from)); };
  if (name == "wolfe1") return Polytope::simplex(3);
  if (name == "box_2x1") return Polytope::box(Vec::Zero(2), Vec{{2.0, 1.0}});
  if (name == "trunc3") {
    Mat A = Mat::Ones(1, 3);
    Mat D(6, 3);
    D << Mat::Identity(3, 3), -Mat::Identity(3, 3);
    Vec e(6);
    e << 0, 0, 0, -0.6, -0.6, -0.6;
    return Polytope::h_form(A, Vec::Ones(1), D, e);
  }
  if (name.rfind("simplex", 0) == 0) return Polytope::simplex(suffix(7));
  if (name.rfind("box", 0) == 0) return Polytope::unit_box(suffix(3));
  return Polytope::l1_ball(suffix(6), 1.0);
}

Polytope load_polytope(const std::string& name_or_path) {
  if (is_named_polytope(name_or_path) && !std::filesystem::exists(name_or_path)) {
    return named_polytope(name_or_path);
  }
  std::ifstream in(name_or_path);
  if (!in) throw InputError("cannot open polytope file '" + name_or_path + "'");
  return parse_polytope(in);
}

Mat read_matrix(const std::string& inline_or_path) {
  std::vector<std::vector<double>> rows;
  if (std::filesystem::is_regular_file(inline_or_path)) {
    std::ifstream in(inline_or_path);
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      auto vals = split_numbers(line);
      if (!vals.empty()) rows.push_back(std::move(vals));
    }
  } else {
    // Inline: rows separated by ';', entries by spaces or ','.
    std::stringstream ss(inline_or_path);
    std::string row;
    while (std::getline(ss, row, ';')) {
      auto vals = split_numbers(row);
      if (!vals.empty()) rows.push_back(std::move(vals));
    }
  }
  if (rows.empty()) throw InputError("empty matrix '" + inline_or_path + "'");
  Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw InputError("ragged matrix '" + inline_or_path + "'");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vec read_vector(const std::string& inline_or_path) {
  std::vector<double> vals;
  if (std::filesystem::is_regular_file(inline_or_path)) {
    std::ifstream in(inline_or_path);
    std::stringstream buf;
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      buf << line << ' ';
    }
    vals = split_numbers(buf.str());
  } else {
    vals = split_numbers(inline_or_path);
  }
  if (vals.empty()) throw InputError("empty vector '" + inline_or_path + "'");
  return Eigen::Map<Vec>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

}  // namespace polyfw
