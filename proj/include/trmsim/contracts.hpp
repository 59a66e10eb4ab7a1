#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "trmsim/common.hpp"

namespace trmsim::contracts {

/// Tunable parameters of the contract layer. Defaults are the reference
/// operating point used throughout the test suite.
struct Params {
    double score_lambda = 0.9;       // weight of history on satisfactory feedback
    double score_gamma = 0.5;        // multiplicative penalty on unsatisfactory feedback
    double bootstrap_score = 0.3;    // reputation assigned at registration
    Currency registration_escrow = 10;
    Currency feedback_escrow = 1;
};

/// Service obligations agreed at listing time.
struct SlaTerms {
    double min_success_rate = 0.5;
    std::uint64_t max_latency = 100;
    std::uint32_t duration = 5;  // epochs of service per engagement
};

/// Per-node trust state kept by the TRM contract. Updates are constant
/// time: the record carries everything the recursive score formula needs,
/// never the feedback history.
struct ReputationRecord {
    NodeId node;
    double score = 0.0;
    std::uint64_t interactions = 0;
    std::optional<NodeId> last_rater;
    std::optional<std::uint64_t> last_agreement;
    std::uint64_t last_update_height = 0;
};

struct ResourceListing {
    std::uint64_t id = 0;
    NodeId owner;
    std::uint32_t capacity = 0;
    std::uint32_t allocated = 0;
    Currency price_per_epoch = 0;
    SlaTerms sla;
    bool active = true;
};

enum class AgreementState : std::uint8_t { Active, Completed, Violated, Obsolete };

enum class IncidentKind : std::uint8_t { ServiceFailure, LatencyViolation };

struct Incident {
    std::uint64_t epoch = 0;
    IncidentKind kind = IncidentKind::ServiceFailure;
};

/// One service sample delivered by an owner during an epoch.
struct ServiceSample {
    bool success = false;
    std::uint64_t latency = 0;
};

/// Child contract for a single engagement. Lifecycle is strictly
/// Active -> Completed|Violated -> Obsolete; incidents are append-only
/// while Active.
struct SharingAgreement {
    std::uint64_t id = 0;
    std::uint64_t listing = 0;  // lease mapping back to the RM listing
    NodeId owner;
    NodeId user;
    SlaTerms terms;
    AgreementState state = AgreementState::Active;
    std::vector<Incident> incidents;
    std::uint32_t slots = 0;
    std::uint64_t start_epoch = 0;
    std::uint32_t samples_total = 0;
    std::uint32_t samples_ok = 0;
    Currency payment_escrow = 0;
};

/// Rating submitted by a resource user about an owner. Unsatisfactory
/// feedback must cite incident entries of the named agreement as evidence.
struct Feedback {
    NodeId rater;
    NodeId ratee;
    std::uint64_t agreement = 0;
    bool satisfactory = false;
    std::vector<std::uint32_t> evidence;  // incident indices in the agreement
    Currency escrow_paid = 0;
};

// ---------------------------------------------------------------------------
// Contract calls (transaction payloads)

struct RegisterNode {
    NodeId id;
    Fingerprint attributes;
    Role role = Role::ResourceUser;
    Currency deposit = 0;
    Currency endowment = 0;
};

struct SubmitFeedback {
    Feedback fb;
};

struct ListResource {
    std::uint32_t capacity = 0;
    Currency price_per_epoch = 0;
    SlaTerms sla;
};

struct Allocate {
    std::uint64_t listing = 0;
    std::uint32_t slots = 0;
    std::uint64_t start_epoch = 0;  // first epoch of service
};

struct Release {
    std::uint64_t agreement = 0;
};

struct RecordService {
    std::uint64_t agreement = 0;
    std::uint64_t epoch = 0;
    ServiceSample sample;
};

struct Complete {
    std::uint64_t agreement = 0;
    std::uint64_t epoch = 0;
};

using Call = std::variant<RegisterNode, SubmitFeedback, ListResource, Allocate, Release,
                          RecordService, Complete>;

enum class RejectReason : std::uint8_t {
    None = 0,
    // registration / ledger level
    DuplicateAttributes,
    InsufficientDeposit,
    UnknownSender,
    BadNonce,
    BadSignature,
    // TRM contract
    SelfFeedback,
    NoEvidence,
    InsufficientEscrow,
    UnknownAgreement,
    UnknownNode,
    // RM contract
    NotAnOwner,
    NotAUser,
    DuplicateListing,
    UnknownListing,
    CapacityExceeded,
    InactiveListing,
    StillActive,
    InsufficientFunds,
    // SA contract
    NotActive,
    EpochOutOfRange,
    DurationNotElapsed,
    NotAParty,
};

const char* reject_reason_name(RejectReason r);

struct Receipt {
    enum class Status : std::uint8_t { Applied, Collapsed, Rejected };
    Status status = Status::Applied;
    RejectReason reason = RejectReason::None;
    std::uint64_t created_id = 0;                   // listing or agreement id
    std::optional<AgreementState> verdict;          // set by Complete
    bool ok() const { return status != Status::Rejected; }
};

// ---------------------------------------------------------------------------
// State

/// Account state owned by the ledger but mutated by contract execution
/// (escrows, payments, burns).
struct NodeRecord {
    NodeId id;
    Fingerprint device_attributes{};
    Role role = Role::ResourceUser;
    Currency balance = 0;
    Currency escrowed = 0;
    std::uint64_t registered_at = 0;
};

/// Full post-state committed by each block. std::map keeps iteration (and
/// therefore the state root) deterministic.
struct State {
    std::map<NodeId, NodeRecord> accounts;
    std::set<Fingerprint> seen_attributes;  // includes deregistered identities
    Currency minted = 0;
    Currency burned = 0;

    std::map<NodeId, ReputationRecord> reputations;
    std::map<std::uint64_t, ResourceListing> listings;
    std::map<std::uint64_t, SharingAgreement> agreements;
    std::map<NodeId, std::uint64_t> listing_by_owner;
    std::uint64_t next_listing_id = 1;
    std::uint64_t next_agreement_id = 1;

    Currency circulating() const;
};

/// Recursive score update; the only way scores move.
/// satisfactory: s <- lambda*s + (1-lambda); unsatisfactory: s <- gamma*s.
double update_score(ReputationRecord& rec, bool satisfactory, const Params& p,
                    std::uint64_t height);

std::optional<double> get_reputation(const State& s, const NodeId& node);

/// Expected Complete verdict given current samples; used by callers that
/// need to attach feedback in the same block as the completion.
std::optional<AgreementState> preview_verdict(const State& s, std::uint64_t agreement);

/// Executes one contract call against the state. `sender` has already
/// passed ledger-level checks (registration, nonce, signature).
Receipt execute(State& s, const NodeId& sender, const Call& call, const Params& p,
                std::uint64_t height);

}  // namespace trmsim::contracts
