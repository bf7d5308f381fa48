// Copyright 2026 The dcqd authors
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

#include <iostream>

#include "CLI11.hpp"
#include "dcqd/cli_commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Direct characterization of quantum dynamics for prime-d "
               "qudits: probe-state simulation, stabilizer/normalizer "
               "measurements, and process-matrix reconstruction"};
  app.require_subcommand(1);

  dcqd::ReconstructOptions reconstruct_options;
  int expected_d = 0;
  long long shots = 0;
  auto* reconstruct = app.add_subcommand(
      "reconstruct", "Recover a process matrix from simulated measurements");
  reconstruct
      ->add_option("--channel", reconstruct_options.channel_file,
                   "Channel specification file (JSON)")
      ->required();
  reconstruct->add_option("--d", expected_d,
                          "Cross-check against the file's dimension");
  reconstruct->add_option(
      "--shots", shots,
      "Shots per configuration (omit for exact ensemble statistics)");
  reconstruct->add_option("--seed", reconstruct_options.seed,
                          "Seed for probe coefficients and sampling");
  reconstruct->add_option("--output", reconstruct_options.output_file,
                          "Write the run report to this file");
  reconstruct->add_flag("--trace-preserving",
                        reconstruct_options.trace_preserving,
                        "Add trace-preservation constraint rows");
  reconstruct
      ->add_option("--alphas-policy", reconstruct_options.alphas_policy,
                   "Probe coefficient policy: geometric or random")
      ->check(CLI::IsMember({"geometric", "random"}));
  reconstruct->add_option("--subgroup-offset",
                          reconstruct_options.subgroup_offset,
                          "Rotate which Abelian subgroups are measured");
  reconstruct->add_option("--coset-label", reconstruct_options.coset_label,
                          "Coset label a0 measured in every configuration");

  int verify_d = 2;
  auto* verify =
      app.add_subcommand("verify", "Run the structural property suite");
  verify->add_option("--d", verify_d, "Prime qudit dimension")->required();

  int resources_d = 2;
  int resources_n = 1;
  auto* resources = app.add_subcommand(
      "resources", "Print the tomography-scheme resource comparison");
  resources->add_option("--d", resources_d, "Qudit dimension")->required();
  resources->add_option("--n", resources_n, "Number of qudits");

  int demo_d = 2;
  std::string demo_channel;
  auto* demo = app.add_subcommand(
      "population-demo",
      "Single-configuration diagonal extraction printed as a grid");
  demo->add_option("--d", demo_d, "Prime qudit dimension")->required();
  demo->add_option("--channel", demo_channel,
                   "Channel specification file (identity when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (reconstruct->parsed()) {
      if (expected_d > 0) reconstruct_options.expected_d = expected_d;
      if (reconstruct->count("--shots") > 0) {
        reconstruct_options.shots = shots;
      }
      return dcqd::cmd_reconstruct(reconstruct_options, std::cout, std::cerr);
    }
    if (verify->parsed()) {
      return dcqd::cmd_verify(verify_d, std::cout, std::cerr);
    }
    if (resources->parsed()) {
      return dcqd::cmd_resources(resources_d, resources_n, std::cout,
                                 std::cerr);
    }
    if (demo->parsed()) {
      return dcqd::cmd_population_demo(demo_d, demo_channel, std::cout,
                                       std::cerr);
    }
  } catch (const dcqd::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dcqd::kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dcqd::kExitInputError;
  }
  return dcqd::kExitInputError;
}
