#include "ququart/harness/plots.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "ququart/util/log.hpp"
#include "ququart/vqe/ansatz.hpp"

namespace fs = std::filesystem;

namespace ququart {

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw InvalidArgument("missing column " + name);
    return static_cast<int>(it - header.begin());
  }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

Table read_table(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw InvalidArgument("cannot read " + p.string());
  Table t;
  std::string line;
  std::getline(in, line);
  t.header = split(line);
  while (std::getline(in, line))
    if (!line.empty()) t.rows.push_back(split(line));
  return t;
}

// Minimal SVG canvas with a single data frame.
class Figure {
 public:
  Figure(std::string title, std::string xlabel, std::string ylabel, double x0, double x1, double y0, double y1)
      : x0_(x0), x1_(x1), y0_(y0), y1_(y1) {
    if (x1_ <= x0_) x1_ = x0_ + 1;
    if (y1_ <= y0_) y1_ = y0_ + 1;
    body_ << fmt::format(R"(<text x="{}" y="24" text-anchor="middle" font-size="16">{}</text>)", kW / 2, title) << '\n';
    body_ << fmt::format(R"(<text x="{}" y="{}" text-anchor="middle" font-size="13">{}</text>)", kL + plot_w() / 2,
                         kH - 10, xlabel)
          << '\n';
    body_ << fmt::format(R"svg(<text x="16" y="{}" text-anchor="middle" font-size="13" transform="rotate(-90 16 {})">{}</text>)svg",
                         kT + plot_h() / 2, kT + plot_h() / 2, ylabel)
          << '\n';
  }

  double px(double x) const { return kL + (x - x0_) / (x1_ - x0_) * plot_w(); }
  double py(double y) const { return kT + (1 - (y - y0_) / (y1_ - y0_)) * plot_h(); }

  void rect(double xa, double xb, double ya, double yb, const std::string& fill) {
    body_ << fmt::format(R"(<rect x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}" fill="{}"/>)", px(xa), py(yb),
                         px(xb) - px(xa), py(ya) - py(yb), fill)
          << '\n';
  }
  void dot(double x, double y, const std::string& color, double r = 2.0) {
    body_ << fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="{}" fill="{}" fill-opacity="0.6"/>)", px(x), py(y), r,
                         color)
          << '\n';
  }
  void line(const std::vector<std::pair<double, double>>& pts, const std::string& color, double width = 1.5,
            bool dashed = false) {
    if (pts.empty()) return;
    std::string d;
    for (std::size_t i = 0; i < pts.size(); ++i)
      d += fmt::format("{}{:.2f},{:.2f} ", i ? "L" : "M", px(pts[i].first), py(pts[i].second));
    body_ << fmt::format(R"(<path d="{}" fill="none" stroke="{}" stroke-width="{}"{}/>)", d, color, width,
                         dashed ? R"( stroke-dasharray="6 4")" : "")
          << '\n';
  }
  void legend(int slot, const std::string& text, const std::string& color) {
    const double y = kT + 16 + 18 * slot;
    body_ << fmt::format(R"(<rect x="{}" y="{}" width="12" height="12" fill="{}"/>)", kW - 190, y - 10, color) << '\n';
    body_ << fmt::format(R"(<text x="{}" y="{}" font-size="12">{}</text>)", kW - 172, y, text) << '\n';
  }

  void save(const fs::path& p) const {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw InvalidArgument("cannot write " + p.string());
    os << fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="sans-serif">)", kW,
                      kH)
       << '\n';
    os << fmt::format(R"(<rect width="{}" height="{}" fill="white"/>)", kW, kH) << '\n';
    os << body_.str();
    os << axes();
    os << "</svg>\n";
  }

 private:
  static constexpr int kW = 720, kH = 480, kL = 70, kR = 20, kT = 40, kB = 50;
  static double plot_w() { return kW - kL - kR; }
  static double plot_h() { return kH - kT - kB; }

  std::string axes() const {
    std::string s = fmt::format(R"(<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black"/>)", kL, kT,
                                plot_w(), plot_h()) +
                    "\n";
    for (int i = 0; i <= 5; ++i) {
      const double x = x0_ + (x1_ - x0_) * i / 5;
      const double y = y0_ + (y1_ - y0_) * i / 5;
      s += fmt::format(R"(<text x="{:.2f}" y="{}" text-anchor="middle" font-size="11">{:.3g}</text>)", px(x),
                       kT + plot_h() + 16, x) +
           "\n";
      s += fmt::format(R"(<text x="{}" y="{:.2f}" text-anchor="end" font-size="11">{:.3g}</text>)", kL - 6, py(y) + 4,
                       y) +
           "\n";
    }
    return s;
  }

  double x0_, x1_, y0_, y1_;
  std::ostringstream body_;
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

// White to dark blue.
std::string density_color(double f) {
  f = std::clamp(f, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(255 * (1 - 0.9 * f)));
  const int g = static_cast<int>(std::lround(255 * (1 - 0.7 * f)));
  const int b = static_cast<int>(std::lround(255 * (1 - 0.35 * f)));
  return fmt::format("#{:02x}{:02x}{:02x}", r, g, b);
}

void plot_rb(const fs::path& dir, const fs::path& out) {
  const Table t = read_table(dir / "rb.csv");
  const int ck = t.column("kind"), cm = t.column("m"), cs = t.column("survival");
  std::map<std::string, std::vector<std::pair<double, double>>> by_kind;
  double mmax = 1;
  for (const auto& r : t.rows) {
    const double m = std::stod(r.at(cm));
    by_kind[r.at(ck)].emplace_back(m, std::stod(r.at(cs)));
    mmax = std::max(mmax, m);
  }
  Figure f("Randomized benchmarking", "sequence length m", "survival probability", 0, mmax, 0, 1.05);
  nlohmann::json fits;
  if (fs::exists(dir / "rb_fit.json")) {
    std::ifstream in(dir / "rb_fit.json");
    fits = nlohmann::json::parse(in).value("fits", nlohmann::json::array());
  }
  int slot = 0;
  for (const auto& [kind, pts] : by_kind) {
    const std::string color = kPalette[slot % 5];
    for (const auto& [m, y] : pts) f.dot(m, y, color);
    for (const auto& fit : fits)
      if (fit.value("kind", "") == kind && fit.contains("p")) {
        const double a = fit["A"], p = fit["p"], b = fit["B"];
        std::vector<std::pair<double, double>> curve;
        for (int i = 0; i <= 200; ++i) {
          const double m = mmax * i / 200;
          curve.emplace_back(m, a * std::pow(p, m) + b);
        }
        f.line(curve, color, 2.0);
      }
    f.legend(slot++, kind, color);
  }
  f.save(out / "rb_decay.svg");
}

std::vector<std::string> plot_sweep(const fs::path& dir, const fs::path& out) {
  const Table t = read_table(dir / "sweep.csv");
  const int cth = t.column("theta"), cp = t.column("pauli"), ce = t.column("estimate"), cv = t.column("variant");
  // The most processed variant present is the one shown.
  std::string variant = "raw";
  for (const auto& r : t.rows) {
    const auto& v = r.at(cv);
    if (v == "filtered" || (v == "mitigated" && variant == "raw")) variant = v;
  }
  std::map<std::string, std::map<double, std::vector<double>>> data;
  for (const auto& r : t.rows)
    if (r.at(cv) == variant) data[r.at(cp)][std::stod(r.at(cth))].push_back(std::stod(r.at(ce)));

  std::vector<std::string> written;
  constexpr int kBins = 48;
  constexpr double kLo = -1.5, kHi = 1.5;
  for (const auto& [term, cols] : data) {
    const double t0 = cols.begin()->first, t1 = cols.rbegin()->first;
    const double half = cols.size() > 1 ? (t1 - t0) / (cols.size() - 1) / 2 : 0.05;
    Figure f(fmt::format("&lt;{}&gt; estimates ({})", term, variant), "theta (rad)", "estimate", t0 - half, t1 + half, kLo,
             kHi);
    for (const auto& [theta, xs] : cols) {
      std::array<int, kBins> h{};
      for (double x : xs) {
        const int b = std::clamp(static_cast<int>((x - kLo) / (kHi - kLo) * kBins), 0, kBins - 1);
        ++h[b];
      }
      const int peak = *std::max_element(h.begin(), h.end());
      for (int b = 0; b < kBins; ++b)
        if (h[b] > 0)
          f.rect(theta - half, theta + half, kLo + (kHi - kLo) * b / kBins, kLo + (kHi - kLo) * (b + 1) / kBins,
                 density_color(0.15 + 0.85 * double(h[b]) / peak));
    }
    const HamiltonianTerm ht = hamiltonian_term_from_string(term);
    std::vector<std::pair<double, double>> curve;
    for (int i = 0; i <= 400; ++i) {
      const double th = t0 + (t1 - t0) * i / 400;
      curve.emplace_back(th, statevector_expectation(th, ht));
    }
    f.line(curve, "#d62728", 1.5, true);
    f.legend(0, "noiseless", "#d62728");
    const auto name = fmt::format("sweep_{}.svg", term);
    f.save(out / name);
    written.push_back(name);
  }
  return written;
}

void plot_energy(const fs::path& dir, const fs::path& out) {
  const Table t = read_table(dir / "energy.csv");
  const int cr = t.column("R"), cm = t.column("E_mean"), cs = t.column("E_sigma"), cx = t.column("E_exact");
  std::vector<std::array<double, 4>> pts;
  for (const auto& r : t.rows)
    pts.push_back({std::stod(r.at(cr)), std::stod(r.at(cm)), std::stod(r.at(cs)), std::stod(r.at(cx))});
  std::sort(pts.begin(), pts.end());
  double lo = 1e300, hi = -1e300;
  for (const auto& p : pts) {
    lo = std::min({lo, p[1] - p[2], p[3]});
    hi = std::max({hi, p[1] + p[2], p[3]});
  }
  const double pad = 0.05 * (hi - lo + 1e-3);
  Figure f("H2 ground-state energy", "bond distance R (Angstrom)", "energy (Hartree)", pts.front()[0] - 0.1,
           pts.back()[0] + 0.1, lo - pad, hi + pad);
  std::vector<std::pair<double, double>> exact;
  for (const auto& p : pts) exact.emplace_back(p[0], p[3]);
  f.line(exact, "#333333", 1.5);
  for (const auto& p : pts) {
    f.line({{p[0], p[1] - p[2]}, {p[0], p[1] + p[2]}}, kPalette[0], 1.0);
    f.dot(p[0], p[1], kPalette[0], 3.5);
  }
  f.legend(0, "exact diagonalization", "#333333");
  f.legend(1, "estimate", kPalette[0]);
  f.save(out / "energy_curve.svg");
}

}  // namespace

std::vector<std::string> emit_plots(const std::string& dir_name) {
  const fs::path dir(dir_name);
  const fs::path out = dir / "plots";
  std::vector<std::string> written;
  auto attempt = [&](const char* input, auto&& render) {
    if (!fs::exists(dir / input)) return;
    try {
      fs::create_directories(out);
      for (const auto& name : render()) written.push_back("plots/" + name);
    } catch (const std::exception& e) {
      warn(fmt::format("plot for {} skipped: {}", input, e.what()));
    }
  };
  attempt("rb.csv", [&] {
    plot_rb(dir, out);
    return std::vector<std::string>{"rb_decay.svg"};
  });
  attempt("sweep.csv", [&] { return plot_sweep(dir, out); });
  attempt("energy.csv", [&] {
    plot_energy(dir, out);
    return std::vector<std::string>{"energy_curve.svg"};
  });
  return written;
}

}  // namespace ququart
