#pragma once

#include "devlearn/types.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace devlearn {

enum class SimpleAction : std::uint8_t { Clear = 0, Set = 1 };

struct SimpleCommand {
  SimpleAction action = SimpleAction::Clear;
  int index = 0;  // latch to modify, 0..7

  bool operator==(const SimpleCommand&) const = default;
};

enum class UartOp : std::uint8_t { Read = 0, Write = 1 };

struct UartCommand {
  UartOp op = UartOp::Read;
  int reg = 0;   // register offset, 0..7
  int data = 0;  // 0..255; carried for reads too, but the device ignores it

  // Reads ignore the data byte, so two reads of the same register are the
  // same command regardless of it.
  bool operator==(const UartCommand& other) const {
    if (op != other.op || reg != other.reg) return false;
    return op == UartOp::Read || data == other.data;
  }
};

using Command = std::variant<SimpleCommand, UartCommand>;

struct SimpleMachineState {
  std::array<std::uint8_t, 8> latches{};  // all zero at reset

  bool operator==(const SimpleMachineState&) const = default;
};

struct UartState {
  std::array<std::uint8_t, 8> regs{};  // visible register file, offsets 0..7
  std::uint8_t dll = 0;                // divisor latch LSB, behind DLAB
  std::uint8_t dlm = 0;                // divisor latch MSB

  bool operator==(const UartState&) const = default;
};

// Register map (visible offsets): 0 THR/DLL, 1 IER/DLM, 2 FCR, 3 LCR, 4 MCR,
// 5 LSR, 6 MSR, 7 SCR. DLAB is LCR bit 7; while it is set, offsets 0 and 1
// address the divisor latch pair instead of THR/IER.
inline constexpr int kThr = 0;
inline constexpr int kIer = 1;
inline constexpr int kLcr = 3;

inline bool dlab(const UartState& s) { return (s.regs[kLcr] & 0x80) != 0; }
inline int uart_divisor(const UartState& s) {
  return (static_cast<int>(s.dlm) << 8) | s.dll;
}

enum class Parity : std::uint8_t { None = 0, Odd, Even, High, Low };
enum class StopBits : std::uint8_t { One = 0, OneAndHalf, Two };

struct UartOutputFrame {
  int word_length = 5;  // data bits on the wire, 5..8
  long baud = 0;        // 0 when the divisor is 0, else floor(115200/divisor)
  StopBits stop_bits = StopBits::One;
  Parity parity = Parity::None;
  bool tx = false;
  int data = 0;  // transmitted byte; 0 unless tx

  bool operator==(const UartOutputFrame&) const = default;
};

struct BitOutput {
  std::array<std::uint8_t, 8> bits{};  // unused tail stays zero
  int width = 0;

  bool operator==(const BitOutput&) const = default;
};

using OutputFrame = std::variant<BitOutput, UartOutputFrame>;

// Applies one latched command; the output is computed from the new latch
// state. Only the five simple machines are valid kinds here.
std::pair<SimpleMachineState, BitOutput> simple_step(MachineKind kind,
                                                     const SimpleMachineState& state,
                                                     const SimpleCommand& cmd);

// One register access. Writes update the addressed register (divisor latch
// when DLAB is set); reads leave the state untouched and return no data.
// Every frame reports the full current line configuration.
std::pair<UartState, UartOutputFrame> uart_step(const UartState& state,
                                                const UartCommand& cmd);

// Line configuration decoded from LCR and the divisor latch; tx=false.
UartOutputFrame uart_config_frame(const UartState& state);

// Runs a command sequence from reset. All commands must match the machine's
// command type; mixing simple and UART commands is rejected.
std::vector<OutputFrame> run_sequence(MachineKind kind,
                                      std::span<const Command> commands);

struct StateSpace {
  int input_exp;     // input space magnitude as a power of two
  int output_exp;    // output space magnitude
  int internal_exp;  // internal state magnitude

  bool operator==(const StateSpace&) const = default;
};

StateSpace state_space(MachineKind kind);

std::string to_string(Parity p);
std::string to_string(StopBits s);
double stop_bits_value(StopBits s);  // 1, 1.5 or 2

}  // namespace devlearn
