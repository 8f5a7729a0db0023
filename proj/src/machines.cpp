#include "devlearn/machines.hpp"

namespace devlearn {

bool is_simple(MachineKind kind) { return kind != MachineKind::SerialPort; }

int input_width(MachineKind kind) { return is_simple(kind) ? 9 : 12; }

int output_width(MachineKind kind) {
  switch (kind) {
    case MachineKind::EightBit:
      return 8;
    case MachineKind::SerialPort:
      return 22;
    default:
      return 1;
  }
}

std::string to_string(MachineKind kind) {
  switch (kind) {
    case MachineKind::EightBit:
      return "eightbit";
    case MachineKind::SingleDirect:
      return "singledirect";
    case MachineKind::SingleInvert:
      return "singleinvert";
    case MachineKind::SimpleXOR:
      return "xor";
    case MachineKind::Parity:
      return "parity";
    case MachineKind::SerialPort:
      return "serialport";
  }
  throw ConfigError("unknown machine kind");
}

std::string display_name(MachineKind kind) {
  switch (kind) {
    case MachineKind::EightBit:
      return "EightBitMachine";
    case MachineKind::SingleDirect:
      return "SingleDirectMachine";
    case MachineKind::SingleInvert:
      return "SingleInvertMachine";
    case MachineKind::SimpleXOR:
      return "SimpleXORMachine";
    case MachineKind::Parity:
      return "ParityMachine";
    case MachineKind::SerialPort:
      return "SerialPortMachine";
  }
  throw ConfigError("unknown machine kind");
}

MachineKind machine_kind_from_string(const std::string& name) {
  if (name == "eightbit") return MachineKind::EightBit;
  if (name == "singledirect") return MachineKind::SingleDirect;
  if (name == "singleinvert") return MachineKind::SingleInvert;
  if (name == "xor" || name == "simplexor") return MachineKind::SimpleXOR;
  if (name == "parity") return MachineKind::Parity;
  if (name == "serialport") return MachineKind::SerialPort;
  throw RejectedInput("unknown machine kind: " + name);
}

std::pair<SimpleMachineState, BitOutput> simple_step(MachineKind kind,
                                                     const SimpleMachineState& state,
                                                     const SimpleCommand& cmd) {
  if (!is_simple(kind)) throw RejectedInput("simple_step: not a simple machine");
  if (cmd.index < 0 || cmd.index > 7)
    throw RejectedInput("simple_step: latch index out of range");

  SimpleMachineState next = state;
  next.latches[cmd.index] = cmd.action == SimpleAction::Set ? 1 : 0;

  BitOutput out;
  switch (kind) {
    case MachineKind::EightBit:
      out.width = 8;
      for (int i = 0; i < 8; ++i) out.bits[i] = next.latches[i];
      break;
    case MachineKind::SingleDirect:
      out.width = 1;
      out.bits[0] = next.latches[0];
      break;
    case MachineKind::SingleInvert:
      out.width = 1;
      out.bits[0] = next.latches[0] ? 0 : 1;
      break;
    case MachineKind::SimpleXOR:
      out.width = 1;
      out.bits[0] = next.latches[0] ^ next.latches[1];
      break;
    case MachineKind::Parity: {
      out.width = 1;
      std::uint8_t acc = 0;
      for (std::uint8_t v : next.latches) acc ^= v;
      out.bits[0] = acc;
      break;
    }
    default:
      throw RejectedInput("simple_step: not a simple machine");
  }
  return {next, out};
}

UartOutputFrame uart_config_frame(const UartState& state) {
  const std::uint8_t lcr = state.regs[kLcr];

  UartOutputFrame f;
  f.word_length = 5 + (lcr & 0x03);

  if (lcr & 0x04) {
    f.stop_bits = f.word_length == 5 ? StopBits::OneAndHalf : StopBits::Two;
  } else {
    f.stop_bits = StopBits::One;
  }

  if (!(lcr & 0x08)) {
    f.parity = Parity::None;
  } else if (lcr & 0x20) {
    // stick parity: the parity bit is forced to a constant level
    f.parity = (lcr & 0x10) ? Parity::Low : Parity::High;
  } else {
    f.parity = (lcr & 0x10) ? Parity::Even : Parity::Odd;
  }

  const int divisor = uart_divisor(state);
  f.baud = divisor == 0 ? 0 : kMaxBaud / divisor;

  f.tx = false;
  f.data = 0;
  return f;
}

std::pair<UartState, UartOutputFrame> uart_step(const UartState& state,
                                                const UartCommand& cmd) {
  if (cmd.reg < 0 || cmd.reg > 7)
    throw RejectedInput("uart_step: register offset out of range");
  if (cmd.data < 0 || cmd.data > 255)
    throw RejectedInput("uart_step: data byte out of range");

  UartState next = state;
  bool tx = false;

  if (cmd.op == UartOp::Write) {
    const auto byte = static_cast<std::uint8_t>(cmd.data);
    switch (cmd.reg) {
      case kThr:
        if (dlab(next)) {
          next.dll = byte;
        } else {
          next.regs[kThr] = byte;
          tx = true;  // transmit holding register: the byte goes on the wire
        }
        break;
      case kIer:
        if (dlab(next)) {
          next.dlm = byte;
        } else {
          next.regs[kIer] = byte;
        }
        break;
      default:
        next.regs[cmd.reg] = byte;
        break;
    }
  }
  // reads are recognized but return no data and change nothing

  UartOutputFrame frame = uart_config_frame(next);
  frame.tx = tx;
  frame.data = tx ? cmd.data : 0;
  return {next, frame};
}

std::vector<OutputFrame> run_sequence(MachineKind kind,
                                      std::span<const Command> commands) {
  std::vector<OutputFrame> outputs;
  outputs.reserve(commands.size());

  if (kind == MachineKind::SerialPort) {
    UartState state;
    for (const Command& c : commands) {
      const auto* cmd = std::get_if<UartCommand>(&c);
      if (!cmd) throw RejectedInput("run_sequence: simple command sent to the UART");
      auto [next, frame] = uart_step(state, *cmd);
      state = next;
      outputs.emplace_back(frame);
    }
  } else {
    SimpleMachineState state;
    for (const Command& c : commands) {
      const auto* cmd = std::get_if<SimpleCommand>(&c);
      if (!cmd) throw RejectedInput("run_sequence: UART command sent to a simple machine");
      auto [next, bits] = simple_step(kind, state, *cmd);
      state = next;
      outputs.emplace_back(bits);
    }
  }
  return outputs;
}

StateSpace state_space(MachineKind kind) {
  switch (kind) {
    case MachineKind::EightBit:
      return {9, 8, 8};
    case MachineKind::SingleDirect:
      return {9, 1, 1};
    case MachineKind::SingleInvert:
      return {9, 1, 1};
    case MachineKind::SimpleXOR:
      return {9, 1, 2};
    case MachineKind::Parity:
      return {9, 1, 8};
    case MachineKind::SerialPort:
      return {12, 37, 37};
  }
  throw ConfigError("unknown machine kind");
}

std::string to_string(Parity p) {
  switch (p) {
    case Parity::None:
      return "None";
    case Parity::Odd:
      return "Odd";
    case Parity::Even:
      return "Even";
    case Parity::High:
      return "High";
    case Parity::Low:
      return "Low";
  }
  throw ConfigError("unknown parity");
}

std::string to_string(StopBits s) {
  switch (s) {
    case StopBits::One:
      return "1";
    case StopBits::OneAndHalf:
      return "1.5";
    case StopBits::Two:
      return "2";
  }
  throw ConfigError("unknown stop bits");
}

double stop_bits_value(StopBits s) {
  switch (s) {
    case StopBits::One:
      return 1.0;
    case StopBits::OneAndHalf:
      return 1.5;
    case StopBits::Two:
      return 2.0;
  }
  throw ConfigError("unknown stop bits");
}

}  // namespace devlearn
