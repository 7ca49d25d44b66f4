#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "straf/solve.hpp"

namespace straf::solve {

namespace {

using Clock = std::chrono::steady_clock;

struct TempOpb {
  std::filesystem::path path;

  explicit TempOpb(const std::string& contents) {
    char tmpl[] = "/tmp/straf-XXXXXX.opb";
    int fd = mkstemps(tmpl, 4);
    if (fd < 0) throw InternalError("mkstemps failed: " + std::string(std::strerror(errno)));
    path = tmpl;
    ssize_t off = 0;
    while (off < static_cast<ssize_t>(contents.size())) {
      ssize_t n = ::write(fd, contents.data() + off, contents.size() - off);
      if (n < 0) {
        ::close(fd);
        throw InternalError("writing OPB temp file failed");
      }
      off += n;
    }
    ::close(fd);
  }

  ~TempOpb() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
};

std::vector<std::string> build_argv(const std::string& tmpl, const std::string& opb_path) {
  std::vector<std::string> argv;
  std::istringstream in(tmpl);
  std::string tok;
  bool substituted = false;
  while (in >> tok) {
    std::size_t at;
    while ((at = tok.find("{opb}")) != std::string::npos) {
      tok.replace(at, 5, opb_path);
      substituted = true;
    }
    argv.push_back(tok);
  }
  if (argv.empty()) throw InputError("external solver command is empty");
  if (!substituted) argv.push_back(opb_path);
  return argv;
}

struct ChildResult {
  bool timed_out = false;
  std::string output;
  int exit_code = -1;
};

ChildResult run_child(const std::vector<std::string>& argv, Clock::time_point deadline) {
  int fds[2];
  if (pipe(fds) != 0) throw InternalError("pipe failed");
  pid_t pid = fork();
  if (pid < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw InternalError("fork failed");
  }
  if (pid == 0) {
    ::close(fds[0]);
    dup2(fds[1], STDOUT_FILENO);
    ::close(fds[1]);
    std::vector<char*> cargv;
    cargv.reserve(argv.size() + 1);
    for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);
    execvp(cargv[0], cargv.data());
    // exec failed; the parent sees a missing s-line and reports solver error.
    _exit(127);
  }

  ::close(fds[1]);
  ChildResult res;
  char buf[4096];
  bool open = true;
  while (open) {
    auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - Clock::now());
    if (remaining.count() <= 0) {
      res.timed_out = true;
      kill(pid, SIGKILL);
      break;
    }
    struct pollfd pfd{fds[0], POLLIN, 0};
    int pr = poll(&pfd, 1, static_cast<int>(std::min<std::int64_t>(remaining.count(), 200)));
    if (pr < 0 && errno != EINTR) break;
    if (pr > 0) {
      ssize_t n = ::read(fds[0], buf, sizeof(buf));
      if (n > 0) {
        res.output.append(buf, static_cast<std::size_t>(n));
      } else {
        open = false;
      }
    }
  }
  ::close(fds[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace

SolveResult run_external(const pb::PBModel& m, const SolverConfig& cfg) {
  if (cfg.external_cmd.empty()) {
    throw InputError("no external solver command configured");
  }
  TempOpb opb(pb::emit_opb(m));
  auto argv = build_argv(cfg.external_cmd, opb.path.string());
  ChildResult child = run_child(argv, Clock::now() + cfg.timeout);
  if (child.timed_out) return {SolveStatus::Timeout, {}, {}};
  try {
    pb::PBOutcome outcome = pb::parse_solver_output(child.output, m.num_vars);
    if (outcome.status == pb::PBOutcome::Status::Unsat) {
      return {SolveStatus::Unsat, {}, {}};
    }
    if (!pb::satisfies(m, outcome.assignment)) {
      return {SolveStatus::Error, {}, "external solver claimed sat with a non-model"};
    }
    return {SolveStatus::Sat, std::move(outcome.assignment), {}};
  } catch (const pb::ProtocolError& e) {
    std::string msg = e.what();
    if (child.exit_code != 0) {
      msg += " (exit code " + std::to_string(child.exit_code) + ")";
    }
    return {SolveStatus::Error, {}, msg};
  }
}

}  // namespace straf::solve
