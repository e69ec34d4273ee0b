#pragma once

// Event trace: one CSV line per FSM transition or register transaction,
// used for debugging and breakdown attribution.

#include <cstdint>
#include <ostream>
#include <string>

namespace satswap {

class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void event(std::uint64_t cycle, const char* state, const std::string& action,
                     int slot) = 0;
};

class CsvTraceSink final : public TraceSink {
 public:
  explicit CsvTraceSink(std::ostream& out) : out_(out) { out_ << "cycle,state,action,slot\n"; }

  void event(std::uint64_t cycle, const char* state, const std::string& action,
             int slot) override {
    out_ << cycle << ',' << state << ',' << action << ',' << slot << '\n';
  }

 private:
  std::ostream& out_;
};

}  // namespace satswap
