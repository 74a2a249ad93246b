// knotprime: primality certificates for knots from PD codes and knot Floer
// polynomials.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "knotprime/errors.hpp"
#include "knotprime/pipeline.hpp"

using namespace knotprime;

namespace {

std::vector<unsigned> parse_p_set(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(static_cast<unsigned>(std::stoul(item)));
    } catch (const std::exception&) {
      throw InputError("bad p-set entry: " + item);
    }
  }
  if (out.empty()) throw InputError("empty p-set");
  std::sort(out.begin(), out.end());
  return out;
}

// Writes via a temporary file so readers never see a partial certificate.
void write_atomically(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw InputError("cannot write " + path);
    out << text << "\n";
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Algebraic primality certificates for knots"};
  app.require_subcommand(1);

  std::string pd_text, omega_text, p_set_text = "2,3,5,7", field = "finite", cert_path, name = "K";
  std::uint64_t d_max = 200;
  bool no_jones = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "Analyze one knot");
  analyze_cmd->add_option("--pd", pd_text, "PD code, e.g. [[1,4,2,5],[3,6,4,1],[5,2,6,3]]")->required();
  analyze_cmd->add_option("--omega", omega_text, "Omega as [[i,j,c],...]");
  analyze_cmd->add_option("--name", name, "Knot name for the certificate");
  analyze_cmd->add_option("--p-set", p_set_text, "Cover degrees");
  analyze_cmd->add_option("--d-max", d_max, "Largest prime d for metacyclic tests");
  analyze_cmd->add_option("--field", field, "finite, cyclotomic or both");
  analyze_cmd->add_option("--certificate", cert_path, "Write the certificate here");
  analyze_cmd->add_flag("--no-jones", no_jones, "Skip the Jones divisibility test");

  std::string corpus_path, report_path, cert_dir;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* batch_cmd = app.add_subcommand("batch", "Analyze every knot in a corpus");
  batch_cmd->add_option("--corpus", corpus_path, "Line-delimited corpus")->required();
  batch_cmd->add_option("--report", report_path, "Report output path")->required();
  batch_cmd->add_option("--jobs", jobs, "Worker threads");
  batch_cmd->add_option("--certificates", cert_dir, "Directory for per-knot certificates");
  batch_cmd->add_option("--p-set", p_set_text, "Cover degrees");
  batch_cmd->add_option("--d-max", d_max, "Largest prime d for metacyclic tests");
  batch_cmd->add_option("--field", field, "finite, cyclotomic or both");

  std::string what = "alexander,jones,homology:2";
  auto* inv_cmd = app.add_subcommand("invariants", "Print classical invariants");
  inv_cmd->add_option("--pd", pd_text, "PD code")->required();
  inv_cmd->add_option("--what", what, "alexander, jones, homology:p (comma separated)");

  std::string replay_path;
  auto* replay_cmd = app.add_subcommand("replay", "Recompute the Betti numbers cited by a certificate");
  replay_cmd->add_option("certificate", replay_path, "Certificate file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    AnalysisConfig config;
    config.p_set = parse_p_set(p_set_text);
    config.d_max = d_max;
    config.field = field_mode_from_string(field);

    if (*analyze_cmd) {
      if (!no_jones) config.determined = load_default_table();
      KnotRecord record;
      record.name = name;
      record.pd = parse_pd(pd_text);
      if (!omega_text.empty()) record.omega = parse_omega(omega_text);
      Certificate cert = analyze(record, config);
      const std::string text = to_json(cert).dump(2);
      if (!cert_path.empty()) write_atomically(cert_path, text);
      std::cout << cert.knot << ": " << to_string(cert.verdict)
                << (cert.first_success.empty() ? "" : " (" + cert.first_success + ")") << "\n";
      if (cert_path.empty()) std::cout << text << "\n";
      return 0;
    }
    if (*batch_cmd) {
      config.determined = load_default_table();
      Corpus corpus = load_corpus(corpus_path);
      BatchReport report = batch(corpus, config, jobs);
      write_atomically(report_path, report.to_json().dump(2));
      if (!cert_dir.empty()) {
        std::filesystem::create_directories(cert_dir);
        for (const auto& c : report.certificates)
          write_atomically(cert_dir + "/" + c.knot + ".json", to_json(c).dump(2));
      }
      std::size_t proven = report.first_success_counts.count("inconclusive")
                               ? report.certificates.size() - report.first_success_counts.at("inconclusive")
                               : report.certificates.size();
      std::cout << report.certificates.size() << " analyzed, " << proven << " decided, "
                << report.quarantined.size() << " quarantined; median " << report.median_ms << " ms\n";
      for (const auto& [k, v] : report.first_success_counts) std::cout << "  " << k << ": " << v << "\n";
      return 0;
    }
    if (*inv_cmd) {
      PDCode pd = parse_pd(pd_text);
      KnotRecord record;
      record.pd = pd;
      KnotData knot(record);
      std::stringstream ss(what);
      std::string item;
      nlohmann::json out;
      while (std::getline(ss, item, ',')) {
        if (item == "alexander") {
          out["alexander"] = knot.alexander().pairs();
        } else if (item == "jones") {
          out["jones"] = knot.jones().pairs();
        } else if (item.rfind("homology:", 0) == 0) {
          unsigned p = static_cast<unsigned>(std::stoul(item.substr(9)));
          std::vector<std::string> parts;
          for (const auto& q : knot.cover(p).prime_powers()) parts.push_back(q.get_str());
          out["homology"][std::to_string(p)] = parts;
        } else {
          throw InputError("unknown invariant " + item);
        }
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (*replay_cmd) {
      Certificate cert = certificate_from_json(nlohmann::json::parse(read_file(replay_path)));
      auto mismatches = replay(cert);
      for (const auto& m : mismatches) std::cout << "MISMATCH " << m << "\n";
      std::cout << cert.knot << ": " << (mismatches.empty() ? "replay ok" : "replay FAILED") << "\n";
      return mismatches.empty() ? 0 : 2;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const ConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
