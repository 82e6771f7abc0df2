#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

namespace pct::testutil {

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

inline std::string pctgen_binary() {
  const char* bin = std::getenv("PCTGEN_BIN");
  if (!bin || !*bin) throw std::runtime_error("PCTGEN_BIN is not set");
  return bin;
}

inline CommandResult run_command(const std::string& args) {
  std::string cmd = pctgen_binary() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  CommandResult res;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.output.append(buf, n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

class ScratchDir {
public:
  explicit ScratchDir(const std::string& tag) {
    dir_ = std::filesystem::temp_directory_path() /
           ("pctgen_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  ~ScratchDir() { std::filesystem::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    std::string p = path(name);
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name), std::ios::binary);
    if (!in) throw std::runtime_error("missing scratch file " + name);
    return std::string(std::istreambuf_iterator<char>(in), {});
  }

private:
  std::filesystem::path dir_;
};

inline const char* example_netlist() {
  return "INPUT x1\nINPUT x2\nINPUT x3\n"
         "y1 = OR(x1, x2)\ny2 = AND(y1, x3)\ny3 = AND(x1, x3)\n"
         "y4 = AND(x2, x3)\ny5 = OR(y3, y4)\nz = XOR(y2, y5)\nOUTPUT z\n";
}

}  // namespace pct::testutil
