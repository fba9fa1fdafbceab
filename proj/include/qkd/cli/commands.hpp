#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qkd::cli {

// Exit codes shared by every command: 0 success, 1 usage/configuration
// error, 2 computation flagged invalid (some requested input fell outside
// the usable windows).
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFlagged = 2;

struct TableWzOptions {
    std::vector<double> alpha;  // empty -> reference grid
    std::string out = "table_wz.csv";
};

struct TableBhOptions {
    std::vector<double> xi;     // empty -> reference grid (with its alpha rows)
    std::vector<double> alpha;  // required when xi is given; shared per xi
    std::string out = "table_bh.csv";
};

struct FigureOptions {
    std::string machine = "wz";  // "wz" or "bh"
    std::optional<double> xi;    // required for "bh"
    std::vector<double> alpha;   // empty -> evenly spaced inside the window
    int grid = 50;               // delta_z points per alpha^2, >= 2
    std::string out = "figure_rlb.csv";
};

struct SimulateOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;  // overrides the config file
    std::string out = "simulate.json";
};

struct WindowsOptions {
    std::vector<double> xi;  // empty -> reference xi list
    std::string out = "windows.json";
};

int cmd_table_wz(const TableWzOptions& opt);
int cmd_table_bh(const TableBhOptions& opt);
int cmd_figure_rlb(const FigureOptions& opt);
int cmd_simulate(const SimulateOptions& opt);
int cmd_windows(const WindowsOptions& opt);

// Parses argv, dispatches to the command handlers, and returns the process
// exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace qkd::cli
