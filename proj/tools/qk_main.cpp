#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qk/cli_io.hpp"
#include "qk/error.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitCounterexample = 3;
constexpr int kExitUsage = 64;

const char* kSynopsis =
    "usage: qk validate <file>\n"
    "       qk classify <file>\n"
    "       qk report <file> [--format text|json]\n"
    "       qk theorems <file> [--witness-dir DIR]\n"
    "       qk example <name> [--emit]\n"
    "       qk search --dim D --samples N --seed S [--workers W] [--mode MODE] [--witness-dir DIR]\n";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qk::Error(qk::ErrorCode::SyntaxError, "cannot read file", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_classification(const qk::Classification& c) {
  std::cout << "integrable: " << (c.integrable ? "true" : "false") << "\n"
            << "kahler: " << (c.kahler ? "true" : "false") << "\n"
            << "almost_kahler: " << (c.almost_kahler ? "true" : "false") << "\n"
            << "quasi_kahler: " << (c.quasi_kahler ? "true" : "false") << "\n";
}

std::string write_witness(const std::string& dir, const std::string& stem, const qk::StructureDocument& doc,
                          const std::vector<qk::TheoremVerdict>& verdicts) {
  std::filesystem::create_directories(dir);
  std::filesystem::path p = std::filesystem::path(dir) / (stem + ".witness.json");
  nlohmann::ordered_json w;
  w["structure"] = nlohmann::ordered_json::parse(qk::emit_document(doc));
  w["verdicts"] = qk::verdicts_json(verdicts);
  std::ofstream out(p);
  out << w.dump(2) << "\n";
  return p.string();
}

int run_theorems(const std::string& file, const std::string& witness_dir) {
  std::string bytes = read_file(file);
  qk::StructureDocument doc = qk::parse_document(bytes);
  qk::StructureAnalysis a = qk::StructureAnalysis::compute(*doc.triple);
  auto verdicts = qk::evaluate_all(a);
  bool bad = false;
  for (const auto& v : verdicts) {
    std::cout << v.id << ": ";
    if (!v.applicable) {
      std::cout << "not applicable\n";
      continue;
    }
    std::cout << "hypotheses " << (v.hypotheses_met ? "met" : "not met") << ", conclusion "
              << (v.conclusion_holds ? "holds" : "fails") << (v.counterexample() ? "  COUNTEREXAMPLE" : "") << "\n";
    bad = bad || v.counterexample();
  }
  if (bad) {
    std::string stem = std::filesystem::path(file).stem().string();
    std::cout << "witness: " << write_witness(witness_dir, stem, doc, verdicts) << "\n";
    return kExitCounterexample;
  }
  return kExitOk;
}

int run_search(const qk::SearchOptions& opt, const std::string& witness_dir) {
  auto records = qk::random_structure_search(opt);
  std::size_t produced = 0, qk_count = 0, ak = 0, integrable = 0, flat = 0, pattern = 0, rejections = 0;
  std::map<std::string, std::pair<std::size_t, std::size_t>> applicable;  // id -> (applicable, hypotheses met)
  std::vector<std::string> witnesses;
  for (const auto& r : records) {
    rejections += r.jacobi_rejections;
    if (!r.triple) continue;
    ++produced;
    qk_count += r.classification.quasi_kahler;
    ak += r.classification.almost_kahler;
    integrable += r.classification.integrable;
    flat += r.hermitian_curvature_zero;
    pattern += r.frame_pattern;
    for (const auto& v : r.verdicts) {
      auto& [app, hyp] = applicable[v.id];
      app += v.applicable;
      hyp += v.applicable && v.hypotheses_met;
    }
    if (r.has_counterexample()) {
      std::string stem = "search-d" + std::to_string(opt.dim) + "-s" + std::to_string(opt.seed) + "-" + std::to_string(r.index);
      witnesses.push_back(write_witness(witness_dir, stem, qk::document_from_triple(*r.triple, stem), r.verdicts));
    }
  }
  std::cout << "mode: " << qk::to_string(opt.mode) << "\n"
            << "dim: " << opt.dim << "\n"
            << "seed: " << opt.seed << "\n"
            << "samples: " << opt.samples << "\n"
            << "produced: " << produced << "\n"
            << "jacobi_rejections: " << rejections << "\n"
            << "quasi_kahler: " << qk_count << "\n"
            << "almost_kahler: " << ak << "\n"
            << "integrable: " << integrable << "\n"
            << "hermitian_flat: " << flat << "\n"
            << "flat_pattern: " << pattern << "\n";
  for (const auto& [id, c] : applicable) {
    std::cout << "theorem " << id << ": applicable " << c.first << ", hypotheses met " << c.second << "\n";
  }
  std::cout << "counterexamples: " << witnesses.size() << "\n";
  for (const auto& w : witnesses) std::cout << "witness: " << w << "\n";
  return witnesses.empty() ? kExitOk : kExitCounterexample;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis of left-invariant almost Hermitian structures on Lie algebras", "qk"};
  app.require_subcommand(1);

  std::string file;
  std::string format = "text";
  std::string name;
  bool emit = false;
  std::string witness_dir = ".";
  qk::SearchOptions opt;
  std::string mode = "quasi_kahler";

  auto* validate = app.add_subcommand("validate", "Parse and validate a structure file");
  validate->add_option("file", file)->required();
  auto* classify = app.add_subcommand("classify", "Print integrable / Kähler / almost Kähler / quasi-Kähler flags");
  classify->add_option("file", file)->required();
  auto* report = app.add_subcommand("report", "Connections, curvature invariants and theorem verdicts");
  report->add_option("file", file)->required();
  report->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  auto* theorems = app.add_subcommand("theorems", "Run the theorem checks");
  theorems->add_option("file", file)->required();
  theorems->add_option("--witness-dir", witness_dir);
  auto* example = app.add_subcommand("example", "Built-in fixtures");
  example->add_option("name", name)->required();
  example->add_flag("--emit", emit, "Print the fixture as a structure file");
  auto* search = app.add_subcommand("search", "Seeded random search for counterexamples");
  search->add_option("--dim", opt.dim)->required();
  search->add_option("--samples", opt.samples)->required();
  search->add_option("--seed", opt.seed)->required();
  search->add_option("--workers", opt.workers)->check(CLI::PositiveNumber);
  search->add_option("--mode", mode)
      ->check(CLI::IsMember({"generic", "quasi_kahler", "almost_kahler", "flat_pattern", "flat_almost_kahler"}));
  search->add_option("--witness-dir", witness_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n" << kSynopsis;
    return kExitUsage;
  }

  try {
    if (*validate) {
      qk::StructureDocument doc = qk::parse_document(read_file(file));
      std::cout << "valid: " << (doc.name.empty() ? file : doc.name) << " (dim " << doc.dim << ")\n";
    } else if (*classify) {
      qk::StructureDocument doc = qk::parse_document(read_file(file));
      print_classification(qk::classify(*doc.triple));
    } else if (*report) {
      std::string bytes = read_file(file);
      qk::StructureDocument doc = qk::parse_document(bytes);
      auto r = qk::report_json(doc, bytes);
      if (format == "json") {
        std::cout << r.dump(2) << "\n";
      } else {
        std::cout << qk::report_text(r);
      }
    } else if (*theorems) {
      return run_theorems(file, witness_dir);
    } else if (*example) {
      qk::StructureDocument doc;
      try {
        doc = qk::builtin_example(name);
      } catch (const qk::Error& e) {
        std::cerr << e.what() << "\navailable:";
        for (const auto& n : qk::builtin_names()) std::cerr << " " << n;
        std::cerr << "\n";
        return kExitUsage;
      }
      if (emit) {
        std::cout << qk::emit_document(doc);
      } else {
        std::cout << "name: " << doc.name << "\ndim: " << doc.dim << "\n";
        print_classification(qk::classify(*doc.triple));
      }
    } else if (*search) {
      opt.mode = *qk::sample_mode_from_string(mode);
      if (opt.dim != 4 && opt.dim != 6 && opt.dim != 8) {
        std::cerr << "error: --dim must be 4, 6 or 8\n" << kSynopsis;
        return kExitUsage;
      }
      return run_search(opt, witness_dir);
    }
  } catch (const qk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}
