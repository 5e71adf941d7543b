//
// Copyright 2026 the qpir authors
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

#pragma once

// The three-message retrieval protocol with explicit server and user roles.
// Registers never physically move; the channel records custody (which party
// may touch which register) and counts the qubits of every hand-off, so the
// communication cost of a session is measured, not recomputed from a
// formula.
//
//   Step 1  server prepares |Phi_A| and sends R', Q_1..Q_ell     (r + ell)
//   Step 2  user applies Z on Q_i and returns Q_1..Q_ell         (ell)
//   Step 3  server applies U_{a^k} on (R, Q_k) for all k, sends R (r)
//   Step 4  user applies CNOT(R,R'), the transform on R, measures R
//
// Total: 2 ell + 2 r qubits over three messages.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qpir/config.hpp"
#include "qpir/database.hpp"
#include "qpir/dense.hpp"
#include "qpir/distribution.hpp"
#include "qpir/errors.hpp"
#include "qpir/layout.hpp"
#include "qpir/sparse.hpp"

namespace qpir {

enum class Party { server, user };

inline std::string party_name(Party p) {
  return p == Party::server ? "server" : "user";
}

struct Message {
  int step = 0;          // 1, 2 or 3
  Party sender = Party::server;
  std::vector<std::string> registers;
  std::size_t qubit_count = 0;

  std::string direction() const {
    return sender == Party::server ? "server->user" : "user->server";
  }
};

/// Custody ledger and qubit meter. A gate applied by a party that does not
/// hold the register is a protocol-state error, which turns the paper
/// communication pattern into something the tests can actually violate.
class Channel {
 public:
  explicit Channel(RegisterLayout layout) : layout_(layout) {}

  Party holder(RegisterRef reg) const {
    switch (reg.kind) {
      case RegisterRef::Kind::r:
        return r_holder_;
      case RegisterRef::Kind::r_prime:
        return r_prime_holder_;
      case RegisterRef::Kind::q:
      case RegisterRef::Kind::q_block:
        return q_holder_;
    }
    return Party::server;
  }

  void require_custody(Party actor, RegisterRef reg) const {
    if (holder(reg) != actor) {
      throw ProtocolStateError("custody violation: " + party_name(actor) +
                               " does not hold register " +
                               layout_.register_name(reg));
    }
  }

  /// Hands the listed registers to the other party and logs the message.
  void send(int step, Party sender, const std::vector<RegisterRef>& regs) {
    Message msg;
    msg.step = step;
    msg.sender = sender;
    const Party receiver =
        sender == Party::server ? Party::user : Party::server;
    for (const auto& reg : regs) {
      require_custody(sender, reg);
      msg.registers.push_back(layout_.register_name(reg));
      msg.qubit_count += layout_.register_width(reg);
      switch (reg.kind) {
        case RegisterRef::Kind::r:
          r_holder_ = receiver;
          break;
        case RegisterRef::Kind::r_prime:
          r_prime_holder_ = receiver;
          break;
        case RegisterRef::Kind::q:
        case RegisterRef::Kind::q_block:
          q_holder_ = receiver;
          break;
      }
    }
    messages_.push_back(std::move(msg));
  }

  const std::vector<Message>& messages() const { return messages_; }

  std::size_t total_qubits_sent() const {
    std::size_t total = 0;
    for (const auto& m : messages_) total += m.qubit_count;
    return total;
  }

 private:
  RegisterLayout layout_;
  std::vector<Message> messages_;
  // The state starts fully on the server side.
  Party r_holder_ = Party::server;
  Party r_prime_holder_ = Party::server;
  Party q_holder_ = Party::server;
};

struct Transcript {
  int protocol_version = 1;
  std::size_t r = 0;
  std::size_t ell = 0;
  std::size_t index = 0;
  BackendKind backend = BackendKind::sparse;
  std::vector<Message> messages;
  std::size_t total_qubits = 0;
  BitString output = BitString::zeros(1);
  std::string database_digest;

  /// Field order is part of the format; keep it exactly as emitted here.
  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["protocol_version"] = protocol_version;
    j["r"] = r;
    j["ell"] = ell;
    j["index"] = index;
    j["backend"] = backend_name(backend);
    j["messages"] = nlohmann::ordered_json::array();
    for (const auto& m : messages) {
      nlohmann::ordered_json jm;
      jm["step"] = m.step;
      jm["direction"] = m.direction();
      jm["registers"] = m.registers;
      jm["qubit_count"] = m.qubit_count;
      j["messages"].push_back(std::move(jm));
    }
    j["total_qubits"] = total_qubits;
    j["output"] = output.to_string();
    j["database_digest"] = database_digest;
    return j;
  }
};

struct SessionResult {
  BitString output = BitString::zeros(1);
  Distribution distribution;
  Transcript transcript;
  /// Peak sparse term count over the whole session (0 on the dense backend).
  std::size_t peak_terms = 0;
};

/// Test hook for the negative control: with z_phase_off set, the user's
/// Step 2 gate applies +1 instead of -1 on |1> (the Z gate degenerates to
/// the identity), which the verification sweep must detect.
struct GateTweaks {
  bool z_phase_off = false;
};

/// Dense backend adapter for Session.
struct DenseBackend {
  using State = DenseState;
  static constexpr BackendKind kind = BackendKind::dense;

  static State prepare_phi(const Database& db, const Caps& caps) {
    return qpir::prepare_phi(db, caps);
  }
  static void z(State& s, std::size_t qubit) { apply_z(s, qubit); }
  static void u_b(State& s, std::size_t k, const BitString& b) {
    apply_u_b(s, k, b);
  }
  static void cnot_rr(State& s) {
    apply_cnot_reg(s, RegisterRef::R(), RegisterRef::RPrime());
  }
  static void qft_r(State& s, const Caps&) { apply_qft(s, RegisterRef::R()); }
  static Distribution measure_r(const State& s) {
    return measure_register(s, RegisterRef::R());
  }
  static std::size_t peak_terms(const State&) { return 0; }
};

/// Sparse backend adapter for Session.
struct SparseBackend {
  using State = SparseState;
  static constexpr BackendKind kind = BackendKind::sparse;

  static State prepare_phi(const Database& db, const Caps& caps) {
    return sparse_prepare_phi(db, caps);
  }
  static void z(State& s, std::size_t qubit) { apply_z(s, qubit); }
  static void u_b(State& s, std::size_t k, const BitString& b) {
    apply_u_b(s, k, b);
  }
  static void cnot_rr(State& s) {
    apply_cnot_reg(s, RegisterRef::R(), RegisterRef::RPrime());
  }
  static void qft_r(State& s, const Caps& caps) {
    apply_qft(s, RegisterRef::R(), caps);
  }
  static Distribution measure_r(const State& s) {
    return measure_register(s, RegisterRef::R());
  }
  static std::size_t peak_terms(const State& s) { return s.peak_term_count(); }
};

/// One protocol run with step-level entry points, templated over the
/// backend so tests can inspect intermediate states on either engine.
/// The database must outlive the session.
template <class Backend>
class Session {
 public:
  using State = typename Backend::State;

  Session(const Database& db, std::size_t index, Caps caps = {},
          GateTweaks tweaks = {})
      : db_(db),
        index_(index),
        caps_(caps),
        tweaks_(tweaks),
        layout_(RegisterLayout::for_database(db)),
        channel_(layout_) {
    if (index < 1 || index > db.ell()) {
      throw RangeError("Session: index " + std::to_string(index) +
                       " out of range [1, " + std::to_string(db.ell()) + "]");
    }
  }

  /// Step 1: the server constructs |Phi_A> and sends R', Q_1..Q_ell.
  void step1_server_prepare() {
    expect_step(1);
    state_.emplace(Backend::prepare_phi(db_, caps_));
    channel_.send(1, Party::server,
                  {RegisterRef::RPrime(), RegisterRef::QBlock()});
    next_step_ = 2;
  }

  /// Step 2: the user applies Z on Q_i and returns Q_1..Q_ell.
  void step2_user_phase() {
    expect_step(2);
    channel_.require_custody(Party::user, RegisterRef::Q(index_));
    if (!tweaks_.z_phase_off) {
      Backend::z(*state_, layout_.q_qubit(index_));
    }
    channel_.send(2, Party::user, {RegisterRef::QBlock()});
    next_step_ = 3;
  }

  /// Step 3: the server applies U_{a^k} on (R, Q_k) for k = 1..ell
  /// (increasing k; the gates commute) and sends R.
  void step3_server_uncompute() {
    expect_step(3);
    channel_.require_custody(Party::server, RegisterRef::R());
    for (std::size_t k = 1; k <= db_.ell(); ++k) {
      channel_.require_custody(Party::server, RegisterRef::Q(k));
      Backend::u_b(*state_, k, db_.item(k));
    }
    channel_.send(3, Party::server, {RegisterRef::R()});
    next_step_ = 4;
  }

  /// Step 4: the user applies CNOT(R,R'), the transform on R, and measures
  /// R in the computational basis. Returns the finished session.
  SessionResult step4_user_decode() {
    expect_step(4);
    channel_.require_custody(Party::user, RegisterRef::R());
    channel_.require_custody(Party::user, RegisterRef::RPrime());
    Backend::cnot_rr(*state_);
    Backend::qft_r(*state_, caps_);
    SessionResult result;
    result.distribution = Backend::measure_r(*state_);
    const auto [value, probability] = result.distribution.mode();
    result.output = BitString::from_value(layout_.r(), value);
    result.peak_terms = Backend::peak_terms(*state_);
    result.transcript.r = layout_.r();
    result.transcript.ell = layout_.ell();
    result.transcript.index = index_;
    result.transcript.backend = Backend::kind;
    result.transcript.messages = channel_.messages();
    result.transcript.total_qubits = channel_.total_qubits_sent();
    result.transcript.output = result.output;
    result.transcript.database_digest = database_digest(db_);
    next_step_ = 5;
    return result;
  }

  /// The shared register state; valid after step 1.
  const State& state() const {
    if (!state_) {
      throw ProtocolStateError("Session::state: step 1 has not run");
    }
    return *state_;
  }

  const Channel& channel() const { return channel_; }

 private:
  void expect_step(int step) {
    if (next_step_ != step) {
      throw ProtocolStateError("protocol step " + std::to_string(step) +
                               " called out of order (expected step " +
                               std::to_string(next_step_) + ")");
    }
  }

  const Database& db_;
  std::size_t index_;
  Caps caps_;
  GateTweaks tweaks_;
  RegisterLayout layout_;
  Channel channel_;
  std::optional<State> state_;
  int next_step_ = 1;
};

/// Runs a full session on the chosen backend.
inline SessionResult run_session(const Database& db, std::size_t index,
                                 BackendKind backend, const Caps& caps = {},
                                 const GateTweaks& tweaks = {}) {
  const auto drive = [&](auto backend_tag) {
    Session<decltype(backend_tag)> session(db, index, caps, tweaks);
    session.step1_server_prepare();
    session.step2_user_phase();
    session.step3_server_uncompute();
    return session.step4_user_decode();
  };
  return backend == BackendKind::dense ? drive(DenseBackend{})
                                       : drive(SparseBackend{});
}

/// Bit cost of the trivial classical protocol (download everything).
inline std::uint64_t classical_baseline_cost(std::size_t ell, std::size_t r) {
  if (ell < 1 || r < 1) {
    throw DimensionError("classical_baseline_cost: ell and r must be >= 1");
  }
  return static_cast<std::uint64_t>(ell) * static_cast<std::uint64_t>(r);
}

}  // namespace qpir
