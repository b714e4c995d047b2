#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "heckext/gmp_pool.hpp"
#include "heckext/scenario.hpp"

int main(int argc, char** argv) {
  heckext::use_pooled_gmp_allocator();
  CLI::App app{"Run a graded affine Hecke algebra scenario and report Ext data exactly."};
  std::string path, format = "table", out_path;
  long seed = 0;
  bool timing = false;
  app.add_option("scenario", path, "scenario file")->required()->check(CLI::ExistingFile);
  app.add_option("--format", format, "table | records | both")->check(CLI::IsMember({"table", "records", "both"}));
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--seed", seed, "accepted and ignored; nothing here is random");
  app.add_flag("--timing", timing, "append wall_ms to each record (output is then not reproducible)");
  CLI11_PARSE(app, argc, argv);

  std::vector<heckext::ReportRecord> records;
  try {
    const auto sc = heckext::load_scenario_file(path);
    records = heckext::run_scenario(sc, {timing});
  } catch (const heckext::Error& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return 2;
  }

  std::string text;
  if (format != "records") text += heckext::render_table(records);
  if (format == "both") text += "\n";
  if (format != "table") text += heckext::render_records(records);

  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!(out << text)) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
  }
  return heckext::all_passed(records) ? 0 : 1;
}
