#include "belitskii/canonize.hpp"
#include "belitskii/coset.hpp"
#include "belitskii/dot.hpp"
#include "belitskii/enumerate.hpp"
#include "belitskii/errors.hpp"
#include "belitskii/graph.hpp"
#include "belitskii/matrix.hpp"
#include "belitskii/oracle.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace belitskii;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitParse = 2;
constexpr int kExitNotStrictlyUpper = 3;

/// One-line machine-parseable error: "error: <kind>: <message>".
int fail(const std::string& kind, std::string message) {
  for (char& c : message)
    if (c == '\n') c = ' ';
  std::cerr << "error: " << kind << ": " << message << '\n';
  return kind == "not-strictly-upper" ? kExitNotStrictlyUpper : kExitParse;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush())
    throw ParseError("cannot write file '" + path + "'");
}

/// "Q" for the rationals, "gf:p" (p prime) for a prime field.
Field parse_field(const std::string& text) {
  if (text == "Q") return Field::rationals();
  if (text.rfind("gf:", 0) == 0) {
    const std::string digits = text.substr(3);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad field '" + text + "': expected Q or gf:<prime>");
    return Field::gf(static_cast<unsigned>(std::stoul(digits)));
  }
  throw ParseError("bad field '" + text + "': expected Q or gf:<prime>");
}

SquareMatrix load_matrix(const std::string& path, const std::string& field_text) {
  const std::string text = read_file(path);
  if (field_text.empty()) return SquareMatrix::parse(text);
  return SquareMatrix::parse(text, parse_field(field_text));
}

std::string partition_text(const SetPartition& p) {
  const std::string typed = print_graph_type(GraphType{p, {}});
  return typed.substr(0, typed.find(':'));
}

std::string arc_text(Arc a) {
  return "(" + std::to_string(a.from) + "," + std::to_string(a.to) + ")";
}

std::string bundled_table_path(unsigned n) {
  return std::string(BELITSKII_TABLES_DIR) + "/n" + std::to_string(n) + ".txt";
}

/// Marks are derived data: strip whatever the input claims and recompute.
GraphType remark(const GraphType& t) {
  GraphType bare = t;
  for (MarkedArc& e : bare.extras) e.marked = false;
  return mark_parameters(bare);
}

int cmd_canon(const std::string& file, const std::string& field_text, bool show_witness,
              const std::string& dot_out) {
  const SquareMatrix input = load_matrix(file, field_text);
  if (!input.is_strictly_upper_triangular())
    throw NotStrictlyUpper("matrix in '" + file + "' is not strictly upper triangular");
  const CanonicalForm cf = canon(input);
  std::ostringstream out;
  out << print_graph_type(cf.graph_type) << '\n';
  const std::map<Arc, std::string> names = parameter_names(cf.graph_type);
  for (const MarkedArc& e : cf.graph_type.extras)
    if (e.marked)
      out << "param " << names.at(e.arc) << ' ' << arc_text(e.arc) << " = "
          << cf.param_values.at(e.arc).to_string() << '\n';
  if (!names.empty() && input.field().modulus == 2)
    out << "note: over gf:2 every parameter equals 1\n";
  out << print_matrix(cf.matrix);
  if (show_witness) out << "witness:\n" << print_matrix(cf.witness.transform());
  std::cout << out.str();
  if (!dot_out.empty()) write_file(dot_out, to_dot(cf));
  return kExitYes;
}

int cmd_coset(const std::string& file, const std::string& field_text) {
  const SquareMatrix input = load_matrix(file, field_text);
  if (!input.is_strictly_upper_triangular())
    throw NotStrictlyUpper("matrix in '" + file + "' is not strictly upper triangular");
  const Subpermutation q = subpermutation_of(input);
  std::cout << partition_text(subpermutation_to_partition(q)) << '\n';
  return kExitYes;
}

int cmd_enumerate(unsigned n, bool indecomposable, std::optional<unsigned> jobs_flag,
                  const std::string& out_file) {
  if (n < 1 || n > 10)
    throw ParseError("n must be between 1 and 10, got " + std::to_string(n));
  unsigned jobs = 1;
  if (jobs_flag) {
    jobs = *jobs_flag;
  } else if (const char* env = std::getenv("BELITSKII_JOBS")) {
    const std::string text(env);
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("BELITSKII_JOBS must be a positive integer, got '" + text + "'");
    jobs = static_cast<unsigned>(std::stoul(text));
  }
  if (jobs < 1) throw ParseError("--jobs must be at least 1");
  const std::string text = format_report(enumerate_bforms(n, indecomposable, jobs));
  if (out_file.empty())
    std::cout << text;
  else
    write_file(out_file, text);
  return kExitYes;
}

int cmd_check(const std::string& type_text) {
  const bool yes = is_canonical(remark(parse_graph_type(type_text)));
  std::cout << (yes ? "yes\n" : "no\n");
  return yes ? kExitYes : kExitNo;
}

int cmd_combine(const std::string& t1_text, const std::string& t2_text,
                const std::vector<std::string>& cross_texts) {
  std::vector<std::pair<unsigned, unsigned>> cross;
  for (const std::string& pair_text : cross_texts) {
    const size_t colon = pair_text.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == pair_text.size())
      throw ParseError("bad cross pair '" + pair_text + "': expected <head>:<tail>");
    const std::string h = pair_text.substr(0, colon);
    const std::string t = pair_text.substr(colon + 1);
    if (h.find_first_not_of("0123456789") != std::string::npos ||
        t.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad cross pair '" + pair_text + "': expected <head>:<tail>");
    cross.emplace_back(static_cast<unsigned>(std::stoul(h)),
                       static_cast<unsigned>(std::stoul(t)));
  }
  const GraphType merged =
      combine(parse_graph_type(t1_text), parse_graph_type(t2_text), cross);
  std::cout << print_graph_type(merged) << '\n';
  return kExitYes;
}

int cmd_construct3(unsigned n, unsigned r) {
  std::cout << print_graph_type(construct_3nilpotent(n, r)) << '\n';
  return kExitYes;
}

int cmd_dsim(const std::string& file_a, const std::string& file_c,
             const std::string& field_text) {
  const bool yes = dn_similar(load_matrix(file_a, field_text), load_matrix(file_c, field_text));
  std::cout << (yes ? "yes\n" : "no\n");
  return yes ? kExitYes : kExitNo;
}

int cmd_verify_tables(unsigned max_n) {
  if (max_n < 1 || max_n > 8)
    throw ParseError("--max-n must be between 1 and 8, got " + std::to_string(max_n));
  bool all_match = true;
  for (unsigned n = 1; n <= max_n; ++n) {
    const EnumerationReport report = enumerate_bforms(n, /*indecomposable_only=*/true, 1);
    const TableDiff diff = verify_against_table(report, read_file(bundled_table_path(n)));
    if (diff.empty()) {
      std::cout << "n=" << n << ": match (forms=" << report.form_count << ")\n";
    } else {
      all_match = false;
      std::cout << "n=" << n << ": mismatch (missing=" << diff.missing.size()
                << " extra=" << diff.extra.size() << ")\n";
      for (const std::string& line : diff.missing) std::cout << "  missing " << line << '\n';
      for (const std::string& line : diff.extra) std::cout << "  extra " << line << '\n';
    }
  }
  return all_match ? kExitYes : kExitNo;
}

int cmd_dot(const std::string& type_text, const std::string& matrix_file,
            const std::string& field_text, const std::string& out_file) {
  if (type_text.empty() == matrix_file.empty())
    throw ParseError("pass exactly one of --type or --matrix");
  std::string dot;
  if (!type_text.empty()) {
    dot = to_dot(parse_graph_type(type_text));
  } else {
    const SquareMatrix m = load_matrix(matrix_file, field_text);
    if (!m.is_strictly_upper_triangular())
      throw NotStrictlyUpper("matrix in '" + matrix_file + "' is not strictly upper triangular");
    dot = to_dot(m);
  }
  if (out_file.empty())
    std::cout << dot;
  else
    write_file(out_file, dot);
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Belitskii canonical forms of nilpotent upper triangular matrices"};
  app.require_subcommand(1);

  std::string file, file2, field_text, dot_out, out_file, type_text, type_text2, matrix_file;
  bool show_witness = false, indecomposable = false;
  unsigned n = 0, r = 0, max_n = 8;
  std::optional<unsigned> jobs_flag;
  std::vector<std::string> cross_texts;

  CLI::App* sc_canon = app.add_subcommand("canon", "Canonical form of a matrix file");
  sc_canon->add_option("file", file, "matrix file")->required();
  sc_canon->add_option("--field", field_text, "coefficient field: Q or gf:<prime>");
  sc_canon->add_flag("--show-witness", show_witness, "also print the conjugating matrix");
  sc_canon->add_option("--dot", dot_out, "write a DOT rendering to this file");

  CLI::App* sc_coset = app.add_subcommand("coset", "Chain partition of a matrix's coset");
  sc_coset->add_option("file", file, "matrix file")->required();
  sc_coset->add_option("--field", field_text, "coefficient field: Q or gf:<prime>");

  CLI::App* sc_enum = app.add_subcommand("enumerate", "List all canonical-form types for one n");
  sc_enum->add_option("n", n, "matrix size (1..10)")->required();
  sc_enum->add_flag("--indecomposable", indecomposable, "keep only connected types");
  sc_enum->add_option("--jobs", jobs_flag, "worker threads (default $BELITSKII_JOBS or 1)");
  sc_enum->add_option("--out", out_file, "write the report to this file");

  CLI::App* sc_check = app.add_subcommand("check", "Is this graph type canonical?");
  sc_check->add_option("type", type_text, "graph type string")->required();

  CLI::App* sc_combine = app.add_subcommand("combine", "Stack two types and splice chains");
  sc_combine->add_option("type1", type_text, "upper type")->required();
  sc_combine->add_option("type2", type_text2, "lower type (vertices get shifted)")->required();
  sc_combine->add_option("--cross", cross_texts,
                         "chain splice <head>:<tail>, head a chain maximum of type1, "
                         "tail a shifted chain minimum of type2");

  CLI::App* sc_c3 = app.add_subcommand("construct3", "Connected type with M^3=0, M^2!=0, r parameters");
  sc_c3->add_option("n", n, "matrix size (>= 6)")->required();
  sc_c3->add_option("r", r, "parameter count")->required();

  CLI::App* sc_dsim = app.add_subcommand("dsim", "Are two matrices diagonally similar?");
  sc_dsim->add_option("fileA", file, "first matrix file")->required();
  sc_dsim->add_option("fileC", file2, "second matrix file")->required();
  sc_dsim->add_option("--field", field_text, "coefficient field: Q or gf:<prime>");

  CLI::App* sc_verify = app.add_subcommand("verify-tables", "Re-enumerate and diff the bundled tables");
  sc_verify->add_option("--max-n", max_n, "largest size to verify (1..8, default 8)");

  CLI::App* sc_dot = app.add_subcommand("dot", "DOT rendering of a type or matrix");
  sc_dot->add_option("--type", type_text, "graph type string");
  sc_dot->add_option("--matrix", matrix_file, "matrix file");
  sc_dot->add_option("--field", field_text, "coefficient field: Q or gf:<prime>");
  sc_dot->add_option("--out", out_file, "write the DOT text to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what());
  }

  try {
    if (app.got_subcommand(sc_canon)) return cmd_canon(file, field_text, show_witness, dot_out);
    if (app.got_subcommand(sc_coset)) return cmd_coset(file, field_text);
    if (app.got_subcommand(sc_enum)) return cmd_enumerate(n, indecomposable, jobs_flag, out_file);
    if (app.got_subcommand(sc_check)) return cmd_check(type_text);
    if (app.got_subcommand(sc_combine)) return cmd_combine(type_text, type_text2, cross_texts);
    if (app.got_subcommand(sc_c3)) return cmd_construct3(n, r);
    if (app.got_subcommand(sc_dsim)) return cmd_dsim(file, file2, field_text);
    if (app.got_subcommand(sc_verify)) return cmd_verify_tables(max_n);
    if (app.got_subcommand(sc_dot)) return cmd_dot(type_text, matrix_file, field_text, out_file);
  } catch (const NotStrictlyUpper& e) {
    return fail("not-strictly-upper", e.what());
  } catch (const ParseError& e) {
    return fail("parse", e.what());
  } catch (const NotUpperTriangular& e) {
    return fail("validation", e.what());
  } catch (const SingularError& e) {
    return fail("validation", e.what());
  } catch (const SizeCapError& e) {
    return fail("validation", e.what());
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  }
  return fail("usage", "no command selected");
}
