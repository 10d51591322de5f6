// Command-line front end: catalog generation, canonical forms, the
// classification pipeline, resolvability, reporting and census validation.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "sts21/analysis.hpp"
#include "sts21/assembler.hpp"
#include "sts21/canonical.hpp"
#include "sts21/catalog.hpp"
#include "sts21/design.hpp"
#include "sts21/doublecount.hpp"

using namespace sts21;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

std::vector<assembler::ClassificationRecord> read_records(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::vector<assembler::ClassificationRecord> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        out.push_back(assembler::record_from_json(line));
    }
    return out;
}

assembler::Mode parse_mode(const std::string& s) {
    if (s == "tau7") return assembler::Mode::TauEq7;
    if (s == "tau3plus") return assembler::Mode::TauGe3;
    if (s == "full") return assembler::Mode::Full;
    throw CLI::ValidationError("mode", "expected tau7, tau3plus or full");
}

doublecount::Stratum parse_stratum(const std::string& s) {
    if (s == "tau7") return doublecount::Stratum::Tau7;
    if (s == "tau3plus") return doublecount::Stratum::Tau3Plus;
    if (s == "full") return doublecount::Stratum::Full;
    throw CLI::ValidationError("stratum", "expected tau7, tau3plus or full");
}

int cmd_catalog_sts9(const std::string& with_block, bool count_only) {
    auto fam = catalog::build_sts9_family(0x1FFu);
    std::vector<int> indices;
    if (with_block.empty()) {
        for (int i = 0; i < int(fam.all.size()); ++i) indices.push_back(i);
    } else {
        int a, b, c;
        char comma;
        std::istringstream is(with_block);
        if (!(is >> a >> comma >> b >> comma >> c))
            throw std::runtime_error("bad --with-block, expected a,b,c");
        indices = fam.with_block(Triple(a, b, c));
    }
    if (count_only) {
        std::cout << indices.size() << "\n";
        return 0;
    }
    for (int i : indices) std::cout << format_design(fam.all[i]) << "\n";
    return 0;
}

int cmd_catalog_td36() {
    auto cat = catalog::enumerate_td_main_classes(6, assembler::Frame::petals());
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < cat.representatives.size(); ++i) {
        std::cout << "# class " << i << ": size " << cat.class_sizes[i] << ", autoparatopisms "
                  << cat.paratopism_stab[i] << "\n"
                  << format_design(cat.representatives[i]) << "\n";
        total += cat.class_sizes[i];
    }
    std::cout << "# " << cat.representatives.size() << " main classes, " << total
              << " latin squares\n";
    return 0;
}

int cmd_canon(const std::string& path, bool print_cert) {
    auto parsed = parse_design(read_file(path));
    canon::CanonicalRecord rec;
    if (parsed.groups) {
        TransversalDesign td;
        td.groups = *parsed.groups;
        td.blocks = parsed.system.blocks;
        rec = canon::canonical_form(td);
    } else {
        rec = canon::canonical_form(parsed.system);
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rec.cert_hash()));
    std::cout << "cert_hash " << buf << "\n" << "aut_order " << rec.aut_order << "\n";
    if (print_cert) std::cout << rec.certificate;
    return 0;
}

int cmd_classify(const std::string& mode_str, int threads, std::string checkpoint_dir,
                 const std::string& out_path) {
    assembler::ClassifyOptions opts;
    opts.mode = parse_mode(mode_str);
    opts.thread_count = threads;
    if (const char* env = std::getenv("STS21_CHECKPOINT_DIR")) checkpoint_dir = env;
    opts.checkpoint_dir = checkpoint_dir;
    opts.progress = [](const std::string& s) { std::cerr << s << "\n"; };
    auto records = assembler::classify_pipeline(opts);
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::runtime_error("cannot write " + out_path);
        os = &file;
    }
    for (const auto& r : records) *os << assembler::record_to_json(r) << "\n";
    std::cerr << records.size() << " classes\n";
    return 0;
}

int cmd_resolve(const std::string& path) {
    auto parsed = parse_design(read_file(path));
    analysis::Resolution witness;
    if (!analysis::is_resolvable(parsed.system, &witness)) {
        std::cout << "NOT RESOLVABLE\n";
        return 1;
    }
    for (std::size_t i = 0; i < witness.size(); ++i) {
        std::cout << "class " << i << ":";
        for (const auto& b : witness[i]) std::cout << " " << b.str();
        std::cout << "\n";
    }
    return 0;
}

int cmd_annotate(const std::string& in_path, const std::string& out_path) {
    auto records = read_records(in_path);
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot write " + out_path);
    std::uint64_t yes = 0;
    for (auto& r : records) {
        if (!r.resolvable) r.resolvable = analysis::is_resolvable(r.blocks);
        if (*r.resolvable) ++yes;
        os << assembler::record_to_json(r) << "\n";
    }
    std::cerr << yes << "/" << records.size() << " resolvable\n";
    return 0;
}

int cmd_report(const std::string& in_path, bool check_theorems, bool as_json) {
    auto records = read_records(in_path);
    auto report = analysis::table_report(records);
    std::cout << (as_json ? report.json() : report.text());
    if (!check_theorems) return 0;
    std::uint64_t bad = 0;
    for (const auto& r : records) {
        auto rep = analysis::check_structure_theorems(r.blocks);
        if (!rep.ok || rep.tau6 != r.tau6 || rep.sigma9 != r.sigma9) {
            ++bad;
            std::cerr << "theorem violation in class " << std::hex << r.cert_hash << std::dec
                      << ":\n";
            for (const auto& v : rep.violations) std::cerr << "  " << v << "\n";
            if (rep.tau6 != r.tau6 || rep.sigma9 != r.sigma9)
                std::cerr << "  recomputed census (" << rep.tau6 << "," << rep.sigma9
                          << ") != recorded (" << r.tau6 << "," << r.sigma9 << ")\n";
        }
    }
    std::cerr << "theorem check: " << (records.size() - bad) << "/" << records.size() << " ok\n";
    return bad ? 1 : 0;
}

int cmd_validate(const std::string& in_path, const std::string& stratum_str,
                 bool check_resolvable) {
    auto records = read_records(in_path);
    auto report = analysis::table_report(records);
    auto stratum = parse_stratum(stratum_str);
    auto mismatches = doublecount::compare_with_expected(report, stratum, check_resolvable);
    if (stratum == doublecount::Stratum::Full) {
        auto lhs = doublecount::total_flower_td_pairs();
        auto rhs = doublecount::weighted_class_sum(records);
        if (lhs != rhs) {
            std::ostringstream os;
            os << "double count: formula " << lhs << " != weighted class sum " << rhs;
            mismatches.push_back(os.str());
        }
    }
    if (mismatches.empty()) {
        std::cout << "census matches (" << report.total_classes << " classes)\n";
        return 0;
    }
    for (const auto& m : mismatches) std::cout << m << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"STS(21) + sub-TD(3,6) classification toolkit"};
    app.require_subcommand(1);

    auto* cat = app.add_subcommand("catalog", "generate building-block catalogs");
    cat->require_subcommand(1);
    auto* sts9 = cat->add_subcommand("sts9", "all STS(9) on points 0..8");
    std::string with_block;
    bool count_only = false;
    sts9->add_option("--with-block", with_block, "only systems containing this block (a,b,c)");
    sts9->add_flag("--count-only", count_only, "print only the number of systems");
    auto* td36 = cat->add_subcommand("td36", "TD(3,6) main-class representatives");

    auto* canon_cmd = app.add_subcommand("canon", "canonical form of a design file");
    std::string canon_path;
    bool print_cert = false;
    canon_cmd->add_option("file", canon_path)->required();
    canon_cmd->add_flag("--print-cert", print_cert, "also print the certificate");

    auto* classify = app.add_subcommand("classify", "run the classification pipeline");
    std::string mode = "tau3plus", checkpoint_dir, out_path;
    int threads = 1;
    classify->add_option("--mode", mode, "tau7 | tau3plus | full");
    classify->add_option("--threads", threads, "worker thread count");
    classify->add_option("--checkpoint", checkpoint_dir,
                         "checkpoint directory (STS21_CHECKPOINT_DIR overrides)");
    classify->add_option("--out", out_path, "output JSONL path (default: stdout)");

    auto* resolve = app.add_subcommand("resolve", "resolvability of a design file");
    std::string resolve_path;
    resolve->add_option("file", resolve_path)->required();

    auto* annotate = app.add_subcommand("annotate", "add resolvability flags to a record file");
    std::string annotate_in, annotate_out;
    annotate->add_option("--in", annotate_in)->required();
    annotate->add_option("--out", annotate_out)->required();

    auto* report = app.add_subcommand("report", "census table from a JSONL record file");
    std::string report_in;
    bool check_theorems = false, as_json = false;
    report->add_option("--in", report_in)->required();
    report->add_flag("--check-theorems", check_theorems, "re-verify structure per class");
    report->add_flag("--json", as_json, "machine-readable output");

    auto* validate = app.add_subcommand("validate", "compare records to the published census");
    std::string validate_in, stratum = "tau3plus";
    bool check_resolvable = false;
    validate->add_option("--in", validate_in)->required();
    validate->add_option("--stratum", stratum, "tau7 | tau3plus | full");
    validate->add_flag("--resolvable", check_resolvable, "also compare resolvable counts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sts9->parsed()) return cmd_catalog_sts9(with_block, count_only);
        if (td36->parsed()) return cmd_catalog_td36();
        if (canon_cmd->parsed()) return cmd_canon(canon_path, print_cert);
        if (classify->parsed()) return cmd_classify(mode, threads, checkpoint_dir, out_path);
        if (resolve->parsed()) return cmd_resolve(resolve_path);
        if (annotate->parsed()) return cmd_annotate(annotate_in, annotate_out);
        if (report->parsed()) return cmd_report(report_in, check_theorems, as_json);
        if (validate->parsed()) return cmd_validate(validate_in, stratum, check_resolvable);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
