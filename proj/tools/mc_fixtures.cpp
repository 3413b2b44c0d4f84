#include <cmath>
#include <fstream>
#include <iostream>
#include <vector>

#include <json.hpp>

#include "dqi/mc.hpp"
#include "dqi/starbody.hpp"

// Regenerates the frozen Monte Carlo fixtures consumed by the test suite.
// Values are deterministic for fixed (seed, samples), so the committed file
// doubles as a regression check on the sampling pipeline itself.

using json = nlohmann::ordered_json;

namespace {

json entry(const std::string& id, const std::string& kind, json inputs,
           const dqi::McEstimate& est) {
  json e;
  e["id"] = id;
  e["kind"] = kind;
  e["inputs"] = std::move(inputs);
  e["value"] = est.value;
  e["std_error"] = est.std_error;
  e["samples"] = est.samples;
  e["seed"] = est.seed;
  return e;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string out_path = argc > 1 ? argv[1] : "mc_fixtures.json";

  json fixtures = json::array();

  {
    const auto est = dqi::mc_sphere_integrate(
        [](std::span<const double> u) { return std::exp(u[2]); }, 2, 1'000'000, 101);
    fixtures.push_back(entry("sphere-exp-u3", "sphere", {{"m", 2}, {"f", "exp(u3)"}}, est));
  }
  {
    const auto est = dqi::mc_sphere_integrate(
        [](std::span<const double> u) { return 1.0 / (1.02 - u[2]); }, 2, 1'000'000, 102);
    fixtures.push_back(
        entry("sphere-inv-linear", "sphere", {{"m", 2}, {"f", "1/(1.02-u3)"}}, est));
  }
  {
    const dqi::Body e112 = dqi::Body::ellipsoid({1.0, 1.0, 2.0});
    const double s = 1.0 / std::sqrt(3.0);
    const std::vector<double> u = {s, s, s};
    const auto est = dqi::mc_section_volume(e112, u, 1'000'000, 202);
    fixtures.push_back(
        entry("section-ellipsoid-112", "section", {{"axes", {1.0, 1.0, 2.0}}, {"u", u}}, est));
  }
  {
    const std::vector<dqi::Body> bodies = {dqi::Body::ellipsoid({1.0, 1.0, 2.0}),
                                           dqi::Body::ball(3, 1.0), dqi::Body::ball(3, 1.5)};
    const auto est = dqi::mc_dual_mixed_volume(bodies, 1'000'000, 303);
    fixtures.push_back(entry("dmv-ellipsoid-balls", "dmv",
                             {{"bodies", {"ellipsoid(1,1,2)", "ball(1)", "ball(1.5)"}}}, est));
  }
  {
    const std::vector<dqi::Body> bodies(4, dqi::Body::ball(4, 1.3));
    const auto est = dqi::mc_dual_mixed_volume(bodies, 500'000, 404);
    fixtures.push_back(entry("dmv-ball4", "dmv", {{"bodies", {"ball4(1.3)", "x4"}}}, est));
  }

  json doc;
  doc["fixtures"] = std::move(fixtures);

  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return 1;
  }
  out << doc.dump(2) << "\n";
  std::cout << "wrote " << out_path << "\n";
  return 0;
}
