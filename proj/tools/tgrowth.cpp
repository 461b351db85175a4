#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "tgrowth/experiment.hpp"
#include "tgrowth/kernels.hpp"

using namespace tgrowth;
namespace fs = std::filesystem;

namespace {

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw ParameterError("cannot write " + out);
  f << text << '\n';
}

Caps load_caps(const std::string& path) { return path.empty() ? Caps{} : decode_caps(read_json(path)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Growth, energy and incidence experiments in T2(F_q) and H(F_q)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string input, out, format = "json", caps_file;
  int threads = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_classes;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--input", input, "Input file")->required();
    sub->add_option("--out", out, "Output file (default stdout)");
    sub->add_option("--threads", threads, "Worker threads (0 = runtime default)");
    sub->add_option("--caps", caps_file, "JSON file with max_set, max_pairs, oracle");
  };

  auto* gen = app.add_subcommand("gen", "Generate a SetFile from a descriptor, or a directory from a batch");
  common(gen);
  gen->add_option("--seed", seed, "Override the descriptor seed");

  auto* report = app.add_subcommand("report", "Growth, coset profile, bounds and incidence bridge for a SetFile");
  common(report);
  report->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  report->add_option("--max-classes", max_classes, "Pair classes fed to the incidence bridge");
  bool with_structure = false, timings = false;
  report->add_flag("--structure", with_structure, "Also run the structure detector");
  report->add_flag("--timings", timings, "Add wall-clock timings (makes output run-dependent)");

  auto* incidence = app.add_subcommand(
      "incidence", "Rudnev comparison for an instance file, or export one pair class of a SetFile as an instance");
  common(incidence);
  std::optional<std::size_t> class_index;
  incidence->add_option("--class", class_index, "Pair class index to export (SetFile input)");

  auto* structure = app.add_subcommand("structure", "Classify a T2 SetFile as POTENT, UNIPOTENT or INCONCLUSIVE");
  common(structure);
  StructureParams sp;
  structure->add_option("--exponent", sp.exponent, "POTENT needs |D| <= K^exponent");
  structure->add_option("--d-ceiling", sp.d_ceiling, "POTENT needs |D| <= this");
  structure->add_option("--power-budget", sp.power_budget, "Largest k searched for U in A_(k)");

  auto* verify = app.add_subcommand("verify", "Re-run the corpus in a directory against its manifest");
  common(verify);
  bool pin = false;
  verify->add_flag("--pin", pin, "Recompute expected values and constants and rewrite the manifest");

  CLI11_PARSE(app, argc, argv);

  try {
    kernels::set_threads(threads);
    const Caps caps = load_caps(caps_file);

    if (gen->parsed()) {
      Json in = read_json(input);
      auto with_seed = [&](Json d) {
        if (seed) d["seed"] = *seed;
        return d;
      };
      if (in.is_array()) {
        // Batch: [{"name", "descriptor"}], written to the --out directory.
        if (out.empty()) throw ParameterError("batch generation needs --out <directory>");
        fs::create_directories(out);
        for (const auto& item : in) {
          const auto file = gen_set(with_seed(item.at("descriptor")), caps);
          write_json(fs::path(out) / (item.at("name").get<std::string>() + ".json"), encode(file));
        }
        return kExitOk;
      }
      emit(encode(gen_set(with_seed(in), caps)).dump(2), out);
      return kExitOk;
    }

    if (report->parsed()) {
      ReportOptions opt;
      opt.caps = caps;
      opt.max_classes = max_classes;
      opt.structure = with_structure;
      opt.timings = timings;
      const auto rep = run_report(decode_set_file(read_json(input)), opt);
      emit(format == "csv" ? csv_header() + "\n" + csv_row(rep) : rep.json.dump(2), out);
      return exit_code(rep);
    }

    if (incidence->parsed()) {
      const Json in = read_json(input);
      if (in.contains("points")) {
        const auto inst = decode_instance(in);
        Json res{{"incidences", incidence_count(inst, caps)}, {"rudnev", encode(rudnev_ratio(inst, caps))}};
        emit(res.dump(2), out);
        return kExitOk;
      }
      const auto set = load_set(decode_set_file(in));
      const Json res = std::visit(
          [&](const auto& A) {
            const auto classes = pair_classes(A, caps);
            if (!class_index) {
              Json list = Json::array();
              for (std::size_t i = 0; i < classes.size(); ++i) {
                list.push_back({{"index", i},
                                {"key", Json::array({classes[i].key[0].v, classes[i].key[1].v})},
                                {"pairs", classes[i].members.size()}});
              }
              return Json{{"classes", list}};
            }
            if (*class_index >= classes.size()) throw ParameterError("class index out of range");
            return encode(build_instance(A, classes[*class_index]));
          },
          set);
      emit(res.dump(2), out);
      return kExitOk;
    }

    if (structure->parsed()) {
      const auto set = load_set(decode_set_file(read_json(input)));
      const auto* A = std::get_if<T2Set>(&set);
      if (!A) throw ParameterError("structure detection is defined for T2");
      const auto rep = classify(*A, sp, caps);
      emit(encode(rep).dump(2), out);
      return rep.error.empty() ? kExitOk : kExitCap;
    }

    if (verify->parsed()) {
      VerifyOptions vo;
      vo.pin = pin;
      vo.caps = caps;
      const auto res = verify_suite(input, vo);
      std::ostringstream table;
      for (const auto& row : res.rows) {
        table << (row.pass ? "PASS  " : "FAIL  ") << row.name << "  " << row.detail << '\n';
      }
      std::string text = table.str();
      if (!text.empty()) text.pop_back();
      emit(text, out);
      if (res.ok()) return kExitOk;
      return res.cap_overflow ? kExitCap : kExitMismatch;
    }
  } catch (const ResourceLimit& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
