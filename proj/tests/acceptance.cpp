// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any line fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "hypsurf/cover.hpp"
#include "hypsurf/halftree.hpp"
#include "hypsurf/suites.hpp"
#include "hypsurf/surface.hpp"

using namespace hs;

namespace {

constexpr std::uint64_t kSeed = 20261014;

// Wall-time budgets, seconds.
constexpr double kEnumerateBudget = 1.0;
constexpr double kRoundtripBudget = 60.0;
constexpr double kLemmaBudget = 300.0;

// Suite sizes.
constexpr int kRoundtripPorts = 8, kRoundtripMetrics = 20;
constexpr int kFlowPorts = 6, kFlowMetrics = 5;
constexpr int kCollapsePorts = 6, kCollapseTrials = 2;
constexpr int kCoverTrials = 20;
constexpr int kEtaPorts = 8;
constexpr int kProportionTrials = 10;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void line(int ac, bool ok, const std::string& detail) {
  std::printf("AC%d %s  %s\n", ac, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string summary(const SuiteReport& r) {
  std::string s = std::to_string(r.checked) + " checked, " + std::to_string(r.failed) + " failed";
  char buf[32];
  std::snprintf(buf, sizeof buf, ", %.2fs", r.seconds);
  s += buf;
  if (!r.failures.empty()) s += "; first: " + r.failures.front();
  return s;
}

void ac1() {
  bool ok = true;
  std::string detail;
  const struct { int n; size_t count; const char* stratum; } want[] = {{3, 2, "H^hyp(2)"}, {4, 4, "H^hyp(1,1)"}};
  for (auto& w : want) {
    auto t0 = Clock::now();
    auto trees = enumerate(w.n);
    double dt = seconds_since(t0);
    bool strata = true;
    for (auto& t : trees) strata = strata && stratum_of(t).name == w.stratum;
    ok = ok && trees.size() == w.count && strata && dt < kEnumerateBudget;
    char buf[96];
    std::snprintf(buf, sizeof buf, "enumerate(%d)=%zu in %s (%.3fs)%s  ", w.n, trees.size(), w.stratum, dt,
                  strata ? "" : " wrong stratum");
    detail += buf;
  }
  line(1, ok, detail);
}

void ac2() {
  auto r = suite_roundtrip(kRoundtripPorts, kRoundtripMetrics, kSeed);
  line(2, r.ok() && r.seconds < kRoundtripBudget, summary(r));
}

void ac3() {
  auto r = suite_flow(kFlowPorts, kFlowMetrics, kSeed);
  line(3, r.ok(), summary(r));
}

void ac4() {
  auto r = suite_collapse(kCollapsePorts, kCollapseTrials, kSeed);
  line(4, r.ok(), summary(r));
}

void ac5() {
  LemmaBounds b;
  b.interval_n = 8;
  b.interval_literal = true;
  b.balls_n = 10;
  b.balls_m = 4;
  b.tree_vertices = 8;
  b.tree_colors = 4;
  auto r = suite_lemmas(b);
  std::string detail;
  for (auto& l : r.lemmas) {
    detail += l.lemma + " " + std::to_string(l.counterexamples.size()) + "/" + std::to_string(l.search_space);
    if (!l.counterexamples.empty()) detail += " (first " + l.counterexamples.front() + ")";
    detail += "; ";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", r.seconds);
  line(5, r.ok() && r.seconds < kLemmaBudget, detail + buf);
}

void ac6() {
  auto fixtures = cover_fixtures();
  auto r = suite_cover(fixtures, kCoverTrials, kSeed);
  // 2r-1 | 2g-1 on the degree-3 cover of H(2)
  bool witness = false;
  std::string w = "no degree-3 fixture over H(2)";
  for (auto& b : fixtures) {
    if (b.degree != 3) continue;
    auto base = stratum_of(lindsey_tree(b.base));
    if (base.name != "H^hyp(2)") continue;
    auto src = stratum_of(lindsey_tree(pullback(b).surface));
    int r_ = base.genus, g = src.genus;
    witness = src.zeros == 1 && (2 * g - 1) % (2 * r_ - 1) == 0 && 2 * r_ - 1 == 3 && 2 * g - 1 == 9;
    w = b.name + ": " + src.name + " over " + base.name + ", 2r-1=" + std::to_string(2 * r_ - 1) +
        " 2g-1=" + std::to_string(2 * g - 1);
  }
  line(6, r.ok() && fixtures.size() >= 5 && witness,
       std::to_string(fixtures.size()) + " blueprints, " + summary(r) + "; " + w);
}

void ac7() {
  auto r = suite_eta(kEtaPorts);
  line(7, r.ok(), summary(r));
}

void ac8() {
  auto r = suite_proportion(cover_fixtures(), kProportionTrials, kSeed);
  line(8, r.ok(), summary(r));
}

}  // namespace

int main() {
  const std::function<void()> all[] = {ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8};
  for (int i = 0; i < 8; ++i) {
    try {
      all[i]();
    } catch (const std::exception& e) {
      line(i + 1, false, std::string("exception: ") + e.what());
    }
  }
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
