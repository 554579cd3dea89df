// Runs acceptance criteria 1-10 on the reference endpoints and prints one line per criterion.
#include "fhs/cli.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>

int main(int argc, char** argv) {
    namespace fs = std::filesystem;
    const fs::path work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "fhs_acceptance";
    fs::remove_all(work);

    fhs::CheckSuite suite;
    int failed = 0;
    auto report = [&](const fhs::CheckResult& r, double seconds) {
        std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name << "): " << r.detail
                  << " [" << static_cast<int>(seconds + 0.5) << " s]" << std::endl;
        failed += !r.passed;
    };
    for (int id = 1; id <= fhs::CheckSuite::count(); ++id) {
        const auto t0 = std::chrono::steady_clock::now();
        const fhs::CheckResult r = suite.run(id);
        report(r, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    fhs::cli::RunConfig cfg;
    cfg.out = work.string();
    const auto t0 = std::chrono::steady_clock::now();
    report(fhs::cli::determinism_check(cfg), std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    std::cout << (10 - failed) << "/10 criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
