// Command-line front end: validate and check action documents, list and run
// the built-in catalog.

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "tameram/report.hpp"

using namespace tameram;

namespace {

enum Exit { kOk = 0, kUsage = 1, kSchema = 2, kValidator = 3, kInvariant = 4 };

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return "sha256:" + out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> split_checks(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

struct Output {
  std::string format = "json";
  bool timing = false;
  std::string only;
};

/// Runs and audits one document; a failed audit is an invariant breach.
Json checked_report(const Instance& in, const Output& o, const std::string& digest) {
  RunOptions opt;
  opt.only = split_checks(o.only);
  opt.timing = o.timing;
  opt.digest = digest;
  Json report = run(in, opt);
  const auto failures = audit(in, report);
  if (!failures.empty()) throw InvariantError("audit failed: " + failures.front());
  report["audit"] = "passed";
  return report;
}

void emit(const Json& report, const Output& o) {
  if (o.format == "text") {
    if (report.contains("reports")) {
      for (const auto& r : report["reports"]) std::cout << render_text(r) << "\n";
    } else {
      std::cout << render_text(report);
    }
  } else {
    std::cout << report.dump(2) << "\n";
  }
}

int guarded(const std::function<void()>& body) {
  try {
    body();
    return kOk;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kSchema;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidator;
  } catch (const DimensionError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidator;
  } catch (const FieldMismatch& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidator;
  } catch (const Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kValidator;
  } catch (const InvariantError& e) {
    std::cerr << "internal invariant breach: " << e.what() << "\n";
    return kInvariant;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tameness checks for finite flat group scheme actions on finite algebras"};
  app.require_subcommand(1);
  Output out;
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--format", out.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    cmd->add_flag("--timing", out.timing, "add per-check timings (makes output nondeterministic)");
  };

  std::string path;
  auto* validate = app.add_subcommand("validate", "parse and validate a document");
  validate->add_option("file", path, "action document")->required();

  auto* check = app.add_subcommand("check", "run checks on a document");
  check->add_option("file", path, "action document")->required();
  check->add_option("--only", out.only, "comma-separated subset of total-integral,inertia,torsor,slice,equivalence");
  add_output(check);

  auto* cat = app.add_subcommand("catalog", "built-in examples");
  cat->require_subcommand(1);
  auto* list = cat->add_subcommand("list", "list entry names");
  std::string name;
  bool all = false;
  auto* run_cmd = cat->add_subcommand("run", "run an entry, or all of them");
  run_cmd->add_option("name", name, "entry name");
  run_cmd->add_flag("--all", all, "run every entry");
  run_cmd->add_option("--only", out.only, "comma-separated subset of checks");
  add_output(run_cmd);
  auto* show = cat->add_subcommand("show", "print an entry as a document");
  show->add_option("name", name, "entry name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  if (*validate) {
    return guarded([&] {
      const auto in = load_document_text(read_file(path));
      std::cout << "valid: " << (in.name.empty() ? path : in.name) << " (dim A = " << in.action.hopf().dim
                << ", dim B = " << in.action.dim() << ", " << in.points.size() << " points)\n";
    });
  }
  if (*check) {
    return guarded([&] {
      const std::string text = read_file(path);
      const auto in = load_document_text(text);
      emit(checked_report(in, out, sha256_hex(text)), out);
    });
  }
  if (*list) {
    for (const auto& e : catalog()) std::cout << e.name << "\n";
    return kOk;
  }
  if (*show) {
    return guarded([&] { std::cout << catalog_entry(name).document().dump(2) << "\n"; });
  }
  if (*run_cmd) {
    if (all == !name.empty()) {
      std::cerr << "error: give an entry name or --all\n";
      return kUsage;
    }
    return guarded([&] {
      auto one = [&](const CatalogEntry& e) {
        const Json doc = e.document();
        return checked_report(load_document(doc), out, sha256_hex(doc.dump()));
      };
      if (all) {
        Json reports = Json::array();
        for (const auto& e : catalog()) reports.push_back(one(e));
        emit(Json{{"reports", reports}}, out);
      } else {
        emit(one(catalog_entry(name)), out);
      }
    });
  }
  return kUsage;
}
