#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace marketnet {

// Base of all errors raised by the library. Two branches matter to callers:
// InputError (bad data or parameters, CLI exit code 2) and BudgetExceeded
// (blown resource budget, CLI exit code 3).
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InputError : public Error {
  public:
    using Error::Error;
};

class NonPositivePrice : public InputError {
  public:
    using InputError::InputError;
};

class ZeroVarianceColumn : public InputError {
  public:
    explicit ZeroVarianceColumn(std::vector<std::string> symbols)
        : InputError(format(symbols)), symbols_(std::move(symbols)) {}

    const std::vector<std::string>& symbols() const { return symbols_; }

  private:
    static std::string format(const std::vector<std::string>& symbols) {
        std::string msg = "zero-variance return column(s):";
        for (const auto& s : symbols) {
            msg += ' ';
            msg += s;
        }
        return msg;
    }

    std::vector<std::string> symbols_;
};

class EmptyGraph : public InputError {
  public:
    using InputError::InputError;
};

class InvalidK : public InputError {
  public:
    using InputError::InputError;
};

class BudgetExceeded : public Error {
  public:
    BudgetExceeded(std::uint64_t steps_used, std::uint64_t max_steps, std::uint64_t cliques_found)
        : Error("clique search budget exceeded: " + std::to_string(steps_used) + " steps (limit " +
                std::to_string(max_steps) + "), " + std::to_string(cliques_found) +
                " maximal cliques found before stopping"),
          steps_used_(steps_used),
          max_steps_(max_steps),
          cliques_found_(cliques_found) {}

    std::uint64_t steps_used() const { return steps_used_; }
    std::uint64_t max_steps() const { return max_steps_; }
    std::uint64_t cliques_found() const { return cliques_found_; }

  private:
    std::uint64_t steps_used_;
    std::uint64_t max_steps_;
    std::uint64_t cliques_found_;
};

}  // namespace marketnet
