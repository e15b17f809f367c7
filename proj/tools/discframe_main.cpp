#include <iostream>

#include "cli/config.hpp"
#include "cli/run.hpp"
#include "discframe/errors.hpp"
#include "discframe/report.hpp"

// Exit codes: 0 success/help, 2 configuration error, 3 computation error,
// 4 I/O error.
int main(int argc, char** argv) {
  using namespace discframe;
  try {
    const cli::ExperimentConfig cfg = cli::parse_config(argc, argv);
    const ReportTable table = cli::run(cfg);
    emit(table, cfg.format, cfg.out_path);
    return 0;
  } catch (const cli::HelpRequested& help) {
    std::cout << help.text();
    return 0;
  } catch (const cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cli::ComputationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
