#include "support/proc.hpp"

#include <fcntl.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace support {
namespace {

std::string read_and_remove(const std::string& path) {
  std::string data;
  FILE* f = std::fopen(path.c_str(), "rb");
  if (f != nullptr) {
    char buf[8192];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof(buf), f)) > 0) {
      data.append(buf, n);
    }
    std::fclose(f);
  }
  std::remove(path.c_str());
  return data;
}

}  // namespace

ProcessResult run_process(const std::string& exe,
                          const std::vector<std::string>& args,
                          const std::string& cwd) {
  char out_path[] = "/tmp/strata_out_XXXXXX";
  char err_path[] = "/tmp/strata_err_XXXXXX";
  const int out_fd = mkstemp(out_path);
  const int err_fd = mkstemp(err_path);
  if (out_fd < 0 || err_fd < 0) {
    throw std::runtime_error("run_process: mkstemp failed");
  }

  std::vector<char*> argv;
  argv.push_back(const_cast<char*>(exe.c_str()));
  for (const std::string& a : args) {
    argv.push_back(const_cast<char*>(a.c_str()));
  }
  argv.push_back(nullptr);

  const auto start = std::chrono::steady_clock::now();
  const pid_t pid = fork();
  if (pid < 0) {
    close(out_fd);
    close(err_fd);
    throw std::runtime_error("run_process: fork failed");
  }
  if (pid == 0) {
    if (!cwd.empty() && chdir(cwd.c_str()) != 0) {
      _exit(127);
    }
    dup2(out_fd, STDOUT_FILENO);
    dup2(err_fd, STDERR_FILENO);
    close(out_fd);
    close(err_fd);
    execv(exe.c_str(), argv.data());
    std::fprintf(stderr, "execv %s: %s\n", exe.c_str(), std::strerror(errno));
    _exit(127);
  }

  close(out_fd);
  close(err_fd);

  int status = 0;
  struct rusage usage;
  std::memset(&usage, 0, sizeof(usage));
  if (wait4(pid, &status, 0, &usage) < 0) {
    throw std::runtime_error("run_process: wait4 failed");
  }
  const auto end = std::chrono::steady_clock::now();

  ProcessResult result;
  result.wall_seconds = std::chrono::duration<double>(end - start).count();
  result.max_rss_kb = usage.ru_maxrss;  // Linux reports kilobytes
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    result.exit_code = 128 + WTERMSIG(status);
  }
  result.stdout_text = read_and_remove(out_path);
  result.stderr_text = read_and_remove(err_path);
  return result;
}

}  // namespace support
