//===-- external.hpp - SMT solver subprocess --------------------*- C++ -*-===//
//
// Copyright 2026 The racesat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
//===----------------------------------------------------------------------===//

//
// Running an external SMT solver as a child process. The command template
// is split on whitespace; a `{file}` argument is replaced by the path of a
// temporary script file, otherwise the script is written to the solver's
// standard input.
//
//===----------------------------------------------------------------------===//
#pragma once

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <semaphore>
#include <sstream>
#include <string>
#include <vector>

#include "racesat/encoding/constraint.hpp"
#include "racesat/solver/result.hpp"
#include "racesat/solver/smtlib.hpp"

namespace racesat {

struct ExternalOptions {
  std::string command = "z3 -in";
  double timeout_seconds = 30;
};

struct ProcessOutput {
  bool started = false;
  bool timed_out = false;
  int exit_code = -1;
  std::string output;  // stdout and stderr, interleaved
  std::string error;   // why the process could not be run
};

namespace detail {

inline std::vector<std::string> split_command(const std::string& cmd) {
  std::istringstream in(cmd);
  std::vector<std::string> argv;
  for (std::string w; in >> w;) argv.push_back(w);
  return argv;
}

class Fd {
 public:
  explicit Fd(int fd = -1) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() { reset(); }
  int get() const { return fd_; }
  void reset(int fd = -1) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = fd;
  }

 private:
  int fd_;
};

}  // namespace detail

/// Runs `argv`, feeding `input` on stdin, and collects its output until it
/// exits or `timeout_seconds` elapse (then it is killed).
inline ProcessOutput run_process(const std::vector<std::string>& argv, const std::string& input,
                                 double timeout_seconds) {
  ProcessOutput res;
  if (argv.empty()) {
    res.error = "empty solver command";
    return res;
  }
  // A socket rather than a pipe for stdin: send() can suppress SIGPIPE
  // when the solver exits without reading everything.
  int in_pair[2], out_pipe[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, in_pair) != 0) {
    res.error = std::string("socketpair: ") + std::strerror(errno);
    return res;
  }
  detail::Fd in_parent(in_pair[0]), in_child(in_pair[1]);
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
    res.error = std::string("pipe: ") + std::strerror(errno);
    return res;
  }
  detail::Fd out_read(out_pipe[0]), out_write(out_pipe[1]);

  std::vector<char*> cargv;
  for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
  cargv.push_back(nullptr);

  pid_t pid = ::fork();
  if (pid < 0) {
    res.error = std::string("fork: ") + std::strerror(errno);
    return res;
  }
  if (pid == 0) {
    ::dup2(in_child.get(), 0);
    ::dup2(out_write.get(), 1);
    ::dup2(out_write.get(), 2);
    ::execvp(cargv[0], cargv.data());
    const char msg[] = "racesat: cannot execute solver\n";
    [[maybe_unused]] auto n = ::write(2, msg, sizeof msg - 1);
    ::_exit(127);
  }
  res.started = true;
  in_child.reset();
  out_write.reset();

  using clock = std::chrono::steady_clock;
  auto deadline = clock::now() + std::chrono::duration_cast<clock::duration>(
                                     std::chrono::duration<double>(timeout_seconds));
  std::size_t written = 0;
  if (input.empty()) ::shutdown(in_parent.get(), SHUT_WR);
  bool out_open = true;
  while (out_open) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - clock::now());
    if (left.count() <= 0) {
      res.timed_out = true;
      break;
    }
    pollfd fds[2];
    int nfds = 0;
    fds[nfds++] = {out_read.get(), POLLIN, 0};
    bool writing = written < input.size() && in_parent.get() >= 0;
    if (writing) fds[nfds++] = {in_parent.get(), POLLOUT, 0};
    int rc = ::poll(fds, nfds, static_cast<int>(std::min<long long>(left.count(), 1000)));
    if (rc < 0) {
      if (errno == EINTR) continue;
      res.error = std::string("poll: ") + std::strerror(errno);
      break;
    }
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      char buf[4096];
      ssize_t n = ::read(out_read.get(), buf, sizeof buf);
      if (n > 0) {
        res.output.append(buf, static_cast<std::size_t>(n));
      } else if (n == 0 || errno != EINTR) {
        out_open = false;
      }
    }
    if (writing && nfds > 1 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
      ssize_t n = ::send(in_parent.get(), input.data() + written, input.size() - written,
                         MSG_NOSIGNAL | MSG_DONTWAIT);
      if (n > 0) {
        written += static_cast<std::size_t>(n);
        if (written == input.size()) ::shutdown(in_parent.get(), SHUT_WR);
      } else if (n < 0 && errno != EAGAIN && errno != EINTR) {
        in_parent.reset();  // solver stopped reading
      }
    }
  }
  if (res.timed_out) ::kill(pid, SIGKILL);
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
  return res;
}

/// Parses `(define-fun name () Int value)` entries of a model.
inline std::map<std::string, std::int64_t> parse_model(const std::string& text) {
  std::map<std::string, std::int64_t> model;
  std::size_t pos = 0;
  while ((pos = text.find("(define-fun", pos)) != std::string::npos) {
    pos += 11;
    std::size_t i = pos;
    auto skip_ws = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    std::size_t start = i;
    bool quoted = i < text.size() && text[i] == '|';
    if (quoted) {
      auto end = text.find('|', i + 1);
      if (end == std::string::npos) break;
      i = end + 1;
    } else {
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
             text[i] != '(' && text[i] != ')')
        ++i;
    }
    std::string name = text.substr(start, i - start);
    if (quoted) name = name.substr(1, name.size() - 2);
    skip_ws();
    if (text.compare(i, 2, "()") != 0) continue;
    i += 2;
    skip_ws();
    if (text.compare(i, 3, "Int") != 0) continue;
    i += 3;
    skip_ws();
    bool negative = false;
    if (text.compare(i, 2, "(-") == 0) {
      negative = true;
      i += 2;
      skip_ws();
    }
    std::size_t num = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == num) continue;
    try {
      std::int64_t v = std::stoll(text.substr(num, i - num));
      model[name] = negative ? -v : v;
    } catch (const std::out_of_range&) {
      // Outside int64; leave it out of the witness.
    }
  }
  return model;
}

/// Runs `script` through the solver command and reads its verdict from
/// the first output line. Model names are decoded with decode_symbol.
inline SolveResult solve_external(const std::string& script, const ExternalOptions& opts = {}) {
  SolveResult r;
  r.backend = "external";
  auto start = std::chrono::steady_clock::now();
  auto finish = [&]() -> SolveResult& {
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  };

  std::vector<std::string> argv = detail::split_command(opts.command);
  std::string input = script;
  std::filesystem::path temp;
  for (auto& a : argv) {
    auto at = a.find("{file}");
    if (at == std::string::npos) continue;
    if (temp.empty()) {
      std::string tmpl = (std::filesystem::temp_directory_path() / "racesat-XXXXXX.smt2").string();
      int fd = ::mkstemps(tmpl.data(), 5);
      if (fd < 0) {
        r.reason = "cannot create temporary script file";
        return finish();
      }
      ::close(fd);
      temp = tmpl;
      std::ofstream(temp) << script;
      input.clear();
    }
    a.replace(at, 6, temp.string());
  }
  ProcessOutput out = run_process(argv, input, opts.timeout_seconds);
  if (!temp.empty()) std::filesystem::remove(temp);

  if (!out.started) {
    r.reason = out.error;
    return finish();
  }
  if (out.timed_out) {
    r.reason = "timeout after " + std::to_string(opts.timeout_seconds) + " s";
    return finish();
  }
  std::string first = out.output.substr(0, out.output.find('\n'));
  while (!first.empty() && std::isspace(static_cast<unsigned char>(first.back()))) first.pop_back();
  if (first == "sat") {
    r.status = SolveStatus::Sat;
    auto model = parse_model(out.output);
    if (!model.empty()) {
      Assignment w;
      for (const auto& [name, v] : model) w[decode_symbol(name)] = v;
      r.witness = std::move(w);
    }
  } else if (first == "unsat") {
    r.status = SolveStatus::Unsat;
  } else {
    r.reason = out.output.empty() ? "solver exited with status " + std::to_string(out.exit_code)
                                  : out.output.substr(0, 500);
  }
  return finish();
}

/// Solves `cs` externally. The witness is keyed by the declared symbols
/// and checked against every atom; a model that fails the check is dropped.
inline SolveResult solve_external(const ConstraintSystem& cs, const ExternalOptions& opts = {}) {
  SolveResult r = solve_external(emit_smtlib(cs), opts);
  if (r.witness) {
    std::map<std::string, Symbol> names;
    for (const auto& d : cs.symbols) names.emplace(d.symbol.smt_name(), d.symbol);
    Assignment w;
    for (const auto& [sym, v] : *r.witness) {
      auto it = names.find(sym.smt_name());
      if (it != names.end()) w[it->second] = v;
    }
    // Solvers may omit symbols that do not matter; any value works for them.
    for (const auto& d : cs.symbols) w.emplace(d.symbol, 0);
    if (satisfies(cs, w)) {
      r.witness = std::move(w);
    } else {
      r.witness.reset();
      r.reason = "model failed validation";
    }
  }
  return r;
}

/// Shares a cap on concurrently running solver processes.
class ExternalSolver {
 public:
  static constexpr std::ptrdiff_t kMaxProcesses = 256;

  explicit ExternalSolver(ExternalOptions opts, std::ptrdiff_t max_processes = 4)
      : opts_(std::move(opts)),
        slots_(std::clamp<std::ptrdiff_t>(max_processes, 1, kMaxProcesses)) {}

  SolveResult solve(const ConstraintSystem& cs) {
    slots_.acquire();
    struct Release {
      std::counting_semaphore<kMaxProcesses>& s;
      ~Release() { s.release(); }
    } release{slots_};
    return solve_external(cs, opts_);
  }

  const ExternalOptions& options() const { return opts_; }

 private:
  ExternalOptions opts_;
  std::counting_semaphore<kMaxProcesses> slots_;
};

}  // namespace racesat
