#include "sparsefact/bi_factor.hpp"
#include "sparsefact/text.hpp"

#include <cerrno>
#include <csignal>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

namespace sparsefact {

namespace {

struct ProcessResult {
    std::string out;
    int status = 0;
    bool timed_out = false;
};

// Runs `/bin/sh -c command`, feeding `input` on stdin and collecting stdout.
ProcessResult run_process(const std::string& command, const std::string& input, std::chrono::milliseconds timeout)
{
    int in_pipe[2], out_pipe[2];
    if (pipe(in_pipe) != 0)
        throw std::runtime_error(std::string("pipe: ") + std::strerror(errno));
    if (pipe(out_pipe) != 0) {
        close(in_pipe[0]);
        close(in_pipe[1]);
        throw std::runtime_error(std::string("pipe: ") + std::strerror(errno));
    }
    pid_t pid = fork();
    if (pid < 0)
        throw std::runtime_error(std::string("fork: ") + std::strerror(errno));
    if (pid > 0)
        setpgid(pid, pid);
    if (pid == 0) {
        // Own process group, so a timeout also takes down whatever the
        // shell started.
        setpgid(0, 0);
        dup2(in_pipe[0], STDIN_FILENO);
        dup2(out_pipe[1], STDOUT_FILENO);
        close(in_pipe[0]);
        close(in_pipe[1]);
        close(out_pipe[0]);
        close(out_pipe[1]);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);
    int wfd = in_pipe[1], rfd = out_pipe[0];
    fcntl(wfd, F_SETFL, fcntl(wfd, F_GETFL) | O_NONBLOCK);
    std::signal(SIGPIPE, SIG_IGN);

    ProcessResult res;
    std::size_t written = 0;
    if (input.empty()) {
        close(wfd);
        wfd = -1;
    }
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    char buf[8192];
    while (rfd >= 0) {
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
        if (left.count() <= 0) {
            res.timed_out = true;
            break;
        }
        pollfd fds[2];
        int n = 0;
        fds[n++] = {rfd, POLLIN, 0};
        if (wfd >= 0)
            fds[n++] = {wfd, POLLOUT, 0};
        int rc = poll(fds, static_cast<nfds_t>(n), static_cast<int>(left.count()));
        if (rc < 0) {
            if (errno == EINTR)
                continue;
            break;
        }
        if (rc == 0)
            continue;
        if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
            ssize_t got = read(rfd, buf, sizeof buf);
            if (got > 0) {
                res.out.append(buf, static_cast<std::size_t>(got));
            } else if (got == 0 || errno != EAGAIN) {
                close(rfd);
                rfd = -1;
            }
        }
        if (wfd >= 0 && n == 2 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
            ssize_t put = write(wfd, input.data() + written, input.size() - written);
            if (put > 0)
                written += static_cast<std::size_t>(put);
            if (put < 0 && errno != EAGAIN)
                written = input.size();
            if (written == input.size()) {
                close(wfd);
                wfd = -1;
            }
        }
    }
    if (wfd >= 0)
        close(wfd);
    if (rfd >= 0)
        close(rfd);
    if (res.timed_out)
        kill(-pid, SIGKILL);
    waitpid(pid, &res.status, 0);
    return res;
}

} // namespace

std::string backend_request(const BiPoly& f)
{
    return "factor_bivariate x t\n" + format(f, "x", "t") + "\n";
}

BiFactorization parse_backend_reply(const BiPoly& f, const std::string& reply)
{
    std::vector<std::string> lines;
    std::istringstream is(reply);
    for (std::string line; std::getline(is, line);)
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            lines.push_back(line);
    if (lines.empty())
        throw std::runtime_error("backend reply is empty");

    auto as_bi = [](const std::string& text) {
        MultiPoly m = parse(text, {"x", "t"});
        if (m.nvars() != 2)
            throw std::runtime_error("backend reply uses variables other than x and t");
        return from_multipoly(m);
    };

    BiFactorization out;
    BiPoly content = as_bi(lines[0]);
    if (content.is_zero() || content.xdegree() != 0)
        throw std::runtime_error("backend content line must be a nonzero polynomial in t");
    if (sign(content.leading_term().coeff) < 0) {
        out.unit = -1;
        content = -content;
    }
    out.content_t = content;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        BiPoly g = as_bi(lines[i]);
        if (g.xdegree() == 0)
            throw std::runtime_error("backend factor " + std::to_string(i) + " has no x");
        if (sign(g.leading_term().coeff) < 0) {
            g = -g;
            out.unit = -out.unit;
        }
        out.factors.push_back(std::move(g));
    }
    if (!(expand(out) == f))
        throw std::runtime_error("backend factors do not multiply back to the input");
    return out;
}

BiFactorization factor_bivariate_external(const BiPoly& f, const ExternalBackend& backend)
{
    std::string problem;
    try {
        ProcessResult r = run_process(backend.command, backend_request(f), backend.timeout);
        if (r.timed_out)
            problem = "backend timed out";
        else if (!WIFEXITED(r.status) || WEXITSTATUS(r.status) != 0)
            problem = "backend exited abnormally";
        else
            return parse_backend_reply(f, r.out);
    } catch (const std::exception& e) {
        problem = e.what();
    }
    throw BackendError(problem, factor_bivariate(f));
}

} // namespace sparsefact
