#include <fstream>
#include <map>

#include "runner.hpp"

namespace simulate {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kPrelude = R"(import csv
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

HERE = Path(__file__).resolve().parent


def load(name):
    with open(HERE / name, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def column(rows, i, kind=float):
    return np.array([kind(r[i]) for r in rows])


def long_grid(name, spinor, axis=0):
    """Long-format contour -> (times, sites, values[time, site])."""
    _, rows = load(name)
    rows = [r for r in rows if r[3] == spinor]
    times = sorted({float(r[axis]) for r in rows})
    sites = sorted({int(r[2]) for r in rows})
    ti = {t: n for n, t in enumerate(times)}
    grid = np.zeros((len(times), len(sites)))
    for r in rows:
        grid[ti[float(r[axis])], int(r[2]) - 1] = float(r[4])
    return np.array(times), np.array(sites), grid

)";

std::string py_list(const std::vector<std::string>& items) {
  std::string s = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    s += (i ? ", " : "") + std::string("\"") + items[i] + "\"";
  }
  return s + "]";
}

std::string first_file(const json& a) { return a.at("files").at(0).get<std::string>(); }

bool same_block(const json& a, const json& b) {
  return a.contains("block") && b.contains("block") && a["block"] == b["block"];
}

std::string entropy_script(const std::string& measured, const std::vector<std::string>& qp,
                           const std::string& png) {
  return std::string(kPrelude) + "MEASURED = " + (measured.empty() ? "None" : "\"" + measured + "\"") +
         "\nPREDICTED = " + py_list(qp) + "\n\n" + R"(fig, ax = plt.subplots(figsize=(6, 4))
if MEASURED:
    _, rows = load(MEASURED)
    ax.plot(column(rows, 0), column(rows, 3), color="tab:blue", label="numerical")
for name in PREDICTED:
    _, rows = load(name)
    ax.plot(column(rows, 0), column(rows, 3), "--", color="tab:red", label="quasi-particle")
ax.set_xlabel(r"$\eta / a$")
ax.set_ylabel(r"$S_A$")
ax.legend()
fig.tight_layout()
fig.savefig(HERE / ")" + png + R"(", dpi=150)
)";
}

std::string contour_script(const std::string& csv, bool zigzag, bool cosmological,
                           const std::string& png) {
  std::string body = std::string(kPrelude) + "DATA = \"" + csv + "\"\n";
  if (zigzag) {
    return body + R"(_, rows = load(DATA)
times = sorted({float(r[0]) for r in rows})
width = max(int(r[2]) for r in rows)
grid = np.zeros((len(times), width))
ti = {t: n for n, t in enumerate(times)}
for r in rows:
    grid[ti[float(r[0])], int(r[2]) - 1] = float(r[3])
fig, ax = plt.subplots(figsize=(6, 4))
im = ax.imshow(grid, origin="lower", aspect="auto", extent=(0.5, width + 0.5, times[0], times[-1]))
ax.set_xlabel("(site, spinor) zigzag index")
ax.set_ylabel(r"$\eta / a$")
fig.colorbar(im, ax=ax)
fig.tight_layout()
fig.savefig(HERE / ")" + png + "\", dpi=150)\n";
  }
  return body + "COSMOLOGICAL = " + (cosmological ? "True" : "False") + "\n" +
         R"(_, rows = load(DATA)
spinors = sorted({r[3] for r in rows}, key=lambda s: {"u": 0, "d": 1, "sum": 2}[s])
axes_rows = 2 if COSMOLOGICAL else 1
fig, axes = plt.subplots(axes_rows, len(spinors), figsize=(5 * len(spinors), 4 * axes_rows),
                         squeeze=False)
for col, spinor in enumerate(spinors):
    eta, sites, grid = long_grid(DATA, spinor, axis=0)
    ax = axes[0][col]
    im = ax.pcolormesh(sites, eta, grid, shading="nearest")
    ax.set_title(f"spinor {spinor}")
    ax.set_xlabel("site")
    ax.set_ylabel(r"$\eta / a$")
    fig.colorbar(im, ax=ax)
    if COSMOLOGICAL:
        t, sites, grid = long_grid(DATA, spinor, axis=1)
        ax = axes[1][col]
        im = ax.pcolormesh(sites, t, grid, shading="nearest")
        ax.set_xlabel("site")
        ax.set_ylabel(r"$t / a$")
        fig.colorbar(im, ax=ax)
fig.tight_layout()
fig.savefig(HERE / ")" + png + "\", dpi=150)\n";
}

std::string spectrum_script(const std::string& csv, const std::string& png) {
  return std::string(kPrelude) + "DATA = \"" + csv + "\"\n" + R"(_, rows = load(DATA)
ka, beta = column(rows, 0), column(rows, 1)
order = np.argsort(ka)
fig, ax = plt.subplots(figsize=(6, 4))
ax.plot(ka[order], beta[order], marker=".")
ax.set_xlabel(r"$k a$")
ax.set_ylabel(r"$|\beta_k|^2$")
fig.tight_layout()
fig.savefig(HERE / ")" + png + "\", dpi=150)\n";
}

std::string symmetry_script(const std::string& table, const std::string& spectra,
                            const std::string& png) {
  return std::string(kPrelude) + "TABLE = \"" + table + "\"\nSPECTRA = \"" + spectra + "\"\n" +
         R"(_, rows = load(SPECTRA)
fig, (left, right) = plt.subplots(1, 2, figsize=(11, 4))
hubble = sorted({float(r[0]) for r in rows})
colors = plt.cm.Blues(np.linspace(0.35, 1.0, len(hubble)))
for h, c in zip(hubble, colors):
    sel = [r for r in rows if float(r[0]) == h]
    ka, beta = column(sel, 1), column(sel, 2)
    order = np.argsort(ka)
    left.plot(ka[order], beta[order], color=c, label=f"Ha = {h:g}")
left.set_xlabel(r"$k a$")
left.set_ylabel(r"$|\beta_k|^2$")
left.legend(fontsize="small")
_, rows = load(TABLE)
right.loglog(column(rows, 0), np.maximum(column(rows, 3), 1e-18), marker="o")
right.set_xlabel(r"$H a$")
right.set_ylabel(r"$\max_k ||\beta_k|^2 - |\beta_{-k}|^2|$")
fig.tight_layout()
fig.savefig(HERE / ")" + png + "\", dpi=150)\n";
}

std::string condensates_script(const std::string& csv, const std::string& png) {
  return std::string(kPrelude) + "DATA = \"" + csv + "\"\n" + R"(_, rows = load(DATA)
fig, ax = plt.subplots(figsize=(6, 4))
ax.plot(column(rows, 0), column(rows, 3), label=r"$\Sigma a$")
ax.plot(column(rows, 0), column(rows, 4), label=r"$\Pi a$")
ax.set_xlabel(r"$\eta / a$")
ax.legend()
fig.tight_layout()
fig.savefig(HERE / ")" + png + "\", dpi=150)\n";
}

}  // namespace

std::vector<fs::path> make_plots(const RunManifest& m) {
  const json& analyses = m.document.at("analyses");
  for (const auto& a : analyses) {
    for (const auto& f : a.at("files")) {
      const fs::path p = m.directory / f.get<std::string>();
      if (!fs::exists(p)) {
        throw ValidationError("manifest.files", 0, "missing file " + p.string());
      }
    }
  }

  std::vector<fs::path> scripts;
  for (const auto& a : analyses) {
    const std::string name = a.at("name").get<std::string>();
    const std::string kind = a.at("kind").get<std::string>();
    const std::string png = "plot_" + name + ".png";
    std::string text;
    if (kind == "entropy" || kind == "qp") {
      std::string measured;
      std::vector<std::string> predicted;
      for (const auto& b : analyses) {
        if (!same_block(a, b)) continue;
        if (b["kind"] == "entropy" && (kind == "qp" || &b == &a)) {
          if (measured.empty()) measured = first_file(b);
        }
        if (b["kind"] == "qp" && (kind == "entropy" || &b == &a)) predicted.push_back(first_file(b));
      }
      text = entropy_script(measured, predicted, png);
    } else if (kind == "contour") {
      text = contour_script(first_file(a), a.value("spinor_mode", "long") == "zigzag",
                            a.value("cosmological_axis", false), png);
    } else if (kind == "spectrum") {
      text = spectrum_script(first_file(a), png);
    } else if (kind == "symmetry") {
      text = symmetry_script(a.at("files").at(0).get<std::string>(),
                             a.at("files").at(1).get<std::string>(), png);
    } else if (kind == "condensates") {
      text = condensates_script(first_file(a), png);
    } else {
      throw ValidationError("manifest.analyses", 0, "unknown analysis kind '" + kind + "'");
    }
    const fs::path script = m.directory / ("plot_" + name + ".py");
    std::ofstream out(script);
    out << text;
    out.close();
    if (!out) throw RunError("cannot write " + script.string());
    scripts.push_back(script);
  }
  return scripts;
}

}  // namespace simulate
