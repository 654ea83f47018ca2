// Copyright 2026 The Testforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "testforge/common/subprocess.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace testforge {

namespace {

using Clock = std::chrono::steady_clock;

void IgnoreSigpipe() {
  static bool done = [] {
    signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)done;
}

// Child side of fork(): wire fds, apply env, exec. Never returns.
[[noreturn]] void ExecChild(const std::vector<std::string>& argv, const EnvOverrides& env,
                            int stdin_fd, int stdout_fd) {
  int devnull = open("/dev/null", O_RDWR);
  dup2(stdin_fd >= 0 ? stdin_fd : devnull, STDIN_FILENO);
  dup2(stdout_fd, STDOUT_FILENO);
  dup2(devnull, STDERR_FILENO);
  for (int fd = 3; fd < 1024; ++fd) close(fd);
  for (const auto& [k, v] : env) setenv(k.c_str(), v.c_str(), 1);
  std::vector<char*> args;
  for (const std::string& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);
  execvp(args[0], args.data());
  _exit(127);
}

int RemainingMs(Clock::time_point deadline) {
  auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
  return left.count() < 0 ? 0 : static_cast<int>(left.count());
}

void KillAndReap(pid_t pid) {
  kill(pid, SIGKILL);
  waitpid(pid, nullptr, 0);
}

}  // namespace

Expected<CommandResult, std::string> RunCommand(const std::vector<std::string>& argv,
                                                const EnvOverrides& env,
                                                const CommandLimits& limits) {
  if (argv.empty()) return MakeUnexpected(std::string("empty command"));
  IgnoreSigpipe();
  int out[2];
  if (pipe(out) != 0) return MakeUnexpected(std::string("pipe: ") + std::strerror(errno));
  pid_t pid = fork();
  if (pid < 0) {
    close(out[0]);
    close(out[1]);
    return MakeUnexpected(std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) ExecChild(argv, env, -1, out[1]);
  close(out[1]);

  CommandResult result;
  auto deadline = Clock::now() + limits.timeout;
  char buf[4096];
  while (true) {
    pollfd p{out[0], POLLIN, 0};
    int ready = poll(&p, 1, RemainingMs(deadline));
    if (ready < 0 && errno == EINTR) continue;
    if (ready == 0) {
      result.outcome = CommandResult::Outcome::kTimeout;
      break;
    }
    ssize_t n = read(out[0], buf, sizeof(buf));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    result.output.insert(result.output.end(), buf, buf + n);
    if (result.output.size() > limits.max_output) {
      result.outcome = CommandResult::Outcome::kOutputTooLarge;
      break;
    }
  }
  close(out[0]);
  if (result.outcome != CommandResult::Outcome::kExited) {
    KillAndReap(pid);
    return result;
  }
  // stdout closed; the process still has to exit before the deadline.
  int status = 0;
  while (true) {
    pid_t r = waitpid(pid, &status, WNOHANG);
    if (r == pid || (r < 0 && errno != EINTR)) break;
    if (Clock::now() >= deadline) {
      result.outcome = CommandResult::Outcome::kTimeout;
      KillAndReap(pid);
      return result;
    }
    usleep(1000);
  }
  if (WIFSIGNALED(status)) {
    result.outcome = CommandResult::Outcome::kSignaled;
    result.status = WTERMSIG(status);
  } else {
    result.status = WEXITSTATUS(status);
  }
  return result;
}

ChildProcess::~ChildProcess() { Kill(); }

Expected<void, std::string> ChildProcess::Start(const std::vector<std::string>& argv,
                                                const EnvOverrides& env) {
  Kill();
  if (argv.empty()) return MakeUnexpected(std::string("empty command"));
  IgnoreSigpipe();
  int in[2];
  int out[2];
  if (pipe(in) != 0) return MakeUnexpected(std::string("pipe: ") + std::strerror(errno));
  if (pipe(out) != 0) {
    close(in[0]);
    close(in[1]);
    return MakeUnexpected(std::string("pipe: ") + std::strerror(errno));
  }
  pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {in[0], in[1], out[0], out[1]}) close(fd);
    return MakeUnexpected(std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) ExecChild(argv, env, in[0], out[1]);
  close(in[0]);
  close(out[1]);
  pid_ = pid;
  to_child_ = in[1];
  from_child_ = out[0];
  buffer_.clear();
  return {};
}

bool ChildProcess::WriteLine(const std::string& line) {
  if (pid_ <= 0) return false;
  std::string data = line + "\n";
  std::size_t done = 0;
  while (done < data.size()) {
    ssize_t n = write(to_child_, data.data() + done, data.size() - done);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    done += static_cast<std::size_t>(n);
  }
  return true;
}

ChildProcess::ReadStatus ChildProcess::ReadLine(std::string& line,
                                                std::chrono::milliseconds timeout) {
  auto deadline = Clock::now() + timeout;
  while (true) {
    auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return ReadStatus::kLine;
    }
    if (pid_ <= 0) return ReadStatus::kClosed;
    pollfd p{from_child_, POLLIN, 0};
    int ready = poll(&p, 1, RemainingMs(deadline));
    if (ready < 0 && errno == EINTR) continue;
    if (ready == 0) return ReadStatus::kTimeout;
    char buf[4096];
    ssize_t n = read(from_child_, buf, sizeof(buf));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return ReadStatus::kClosed;
    buffer_.append(buf, static_cast<std::size_t>(n));
  }
}

void ChildProcess::Kill() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) KillAndReap(pid_);
  pid_ = -1;
  buffer_.clear();
}

}  // namespace testforge
