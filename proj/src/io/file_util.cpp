#include "misdta/io/file_util.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "misdta/errors.hpp"

#ifndef MISDTA_FIXTURE_DIR
#define MISDTA_FIXTURE_DIR "fixtures"
#endif

namespace misdta {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write '" + path.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw ValidationError("failed writing '" + path.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ValidationError("cannot replace '" + path.string() + "': " + ec.message());
  }
}

std::filesystem::path fixture_dir() {
  if (const char* env = std::getenv("MISDTA_FIXTURE_DIR"); env && *env) return env;
  return MISDTA_FIXTURE_DIR;
}

}  // namespace misdta
