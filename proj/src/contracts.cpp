#include "trmsim/contracts.hpp"

#include <algorithm>

namespace trmsim::contracts {

namespace {

Receipt rejected(RejectReason why) {
    Receipt r;
    r.status = Receipt::Status::Rejected;
    r.reason = why;
    return r;
}

Receipt applied(std::uint64_t created = 0) {
    Receipt r;
    r.created_id = created;
    return r;
}

bool is_settled(AgreementState st) {
    return st == AgreementState::Completed || st == AgreementState::Violated;
}

AgreementState verdict_for(const SharingAgreement& a) {
    const double rate = a.samples_total == 0
                            ? 0.0
                            : static_cast<double>(a.samples_ok) / a.samples_total;
    return rate < a.terms.min_success_rate ? AgreementState::Violated
                                           : AgreementState::Completed;
}

Receipt exec_register(State& s, const RegisterNode& reg, const Params& p,
                      std::uint64_t height) {
    if (s.seen_attributes.count(reg.attributes) != 0) {
        return rejected(RejectReason::DuplicateAttributes);
    }
    if (reg.deposit < p.registration_escrow) {
        return rejected(RejectReason::InsufficientDeposit);
    }
    NodeRecord rec;
    rec.id = reg.id;
    rec.device_attributes = reg.attributes;
    rec.role = reg.role;
    rec.balance = reg.endowment;
    rec.escrowed = reg.deposit;
    rec.registered_at = height;
    s.accounts.emplace(reg.id, rec);
    s.seen_attributes.insert(reg.attributes);
    s.minted += reg.endowment + reg.deposit;

    ReputationRecord rep;
    rep.node = reg.id;
    rep.score = p.bootstrap_score;
    rep.last_update_height = height;
    s.reputations.emplace(reg.id, rep);
    return applied();
}

Receipt exec_feedback(State& s, const NodeId& sender, const Feedback& fb, const Params& p,
                      std::uint64_t height) {
    // Check order follows the contract rules: the self test fires before
    // agreement validation so self-ratings are classified as such.
    if (fb.rater != sender) return rejected(RejectReason::NotAParty);
    if (fb.rater == fb.ratee) return rejected(RejectReason::SelfFeedback);

    auto it = s.agreements.find(fb.agreement);
    if (it == s.agreements.end()) return rejected(RejectReason::UnknownAgreement);
    const SharingAgreement& agr = it->second;
    if (agr.user != fb.rater || agr.owner != fb.ratee) {
        return rejected(RejectReason::UnknownAgreement);
    }

    auto rater_acc = s.accounts.find(fb.rater);
    if (rater_acc == s.accounts.end()) return rejected(RejectReason::UnknownNode);
    if (fb.escrow_paid < p.feedback_escrow || rater_acc->second.balance < fb.escrow_paid) {
        return rejected(RejectReason::InsufficientEscrow);
    }

    auto rep = s.reputations.find(fb.ratee);
    if (rep == s.reputations.end()) return rejected(RejectReason::UnknownNode);

    // Consecutive duplicate from the same rater for the same agreement:
    // collapsed into the first one. The escrow is kept, which is what makes
    // repeat submissions expensive.
    if (rep->second.last_rater == fb.rater && rep->second.last_agreement == fb.agreement) {
        rater_acc->second.balance -= fb.escrow_paid;
        s.burned += fb.escrow_paid;
        Receipt r;
        r.status = Receipt::Status::Collapsed;
        return r;
    }

    if (!fb.satisfactory) {
        // Negative ratings need incident evidence recorded on the agreement.
        const bool has_valid_evidence =
            !fb.evidence.empty() &&
            std::all_of(fb.evidence.begin(), fb.evidence.end(), [&](std::uint32_t idx) {
                return idx < agr.incidents.size();
            });
        if (!has_valid_evidence) {
            rater_acc->second.balance -= fb.escrow_paid;
            s.burned += fb.escrow_paid;
            return rejected(RejectReason::NoEvidence);
        }
    }

    // Accepted: escrow returned, score moves, one interaction counted.
    update_score(rep->second, fb.satisfactory, p, height);
    rep->second.interactions += 1;
    rep->second.last_rater = fb.rater;
    rep->second.last_agreement = fb.agreement;
    return applied();
}

Receipt exec_list(State& s, const NodeId& sender, const ListResource& lr) {
    auto acc = s.accounts.find(sender);
    if (acc == s.accounts.end() || acc->second.role != Role::ResourceOwner) {
        return rejected(RejectReason::NotAnOwner);
    }
    auto existing = s.listing_by_owner.find(sender);
    if (existing != s.listing_by_owner.end() &&
        s.listings.at(existing->second).active) {
        return rejected(RejectReason::DuplicateListing);
    }
    ResourceListing listing;
    listing.id = s.next_listing_id++;
    listing.owner = sender;
    listing.capacity = lr.capacity;
    listing.allocated = 0;
    listing.price_per_epoch = lr.price_per_epoch;
    listing.sla = lr.sla;
    listing.active = true;
    s.listings.emplace(listing.id, listing);
    s.listing_by_owner[sender] = listing.id;
    return applied(listing.id);
}

Receipt exec_allocate(State& s, const NodeId& sender, const Allocate& al) {
    auto acc = s.accounts.find(sender);
    if (acc == s.accounts.end() || acc->second.role != Role::ResourceUser) {
        return rejected(RejectReason::NotAUser);
    }
    auto lit = s.listings.find(al.listing);
    if (lit == s.listings.end()) return rejected(RejectReason::UnknownListing);
    ResourceListing& listing = lit->second;
    if (!listing.active) return rejected(RejectReason::InactiveListing);
    if (al.slots == 0 || listing.allocated + al.slots > listing.capacity) {
        return rejected(RejectReason::CapacityExceeded);
    }
    const Currency payment =
        listing.price_per_epoch * static_cast<Currency>(listing.sla.duration) *
        static_cast<Currency>(al.slots);
    if (acc->second.balance < payment) return rejected(RejectReason::InsufficientFunds);

    listing.allocated += al.slots;
    acc->second.balance -= payment;
    acc->second.escrowed += payment;

    SharingAgreement agr;
    agr.id = s.next_agreement_id++;
    agr.listing = listing.id;
    agr.owner = listing.owner;
    agr.user = sender;
    agr.terms = listing.sla;
    agr.state = AgreementState::Active;
    agr.slots = al.slots;
    agr.start_epoch = al.start_epoch;
    agr.payment_escrow = payment;
    s.agreements.emplace(agr.id, agr);
    return applied(agr.id);
}

Receipt exec_record(State& s, const NodeId& sender, const RecordService& rs) {
    auto ait = s.agreements.find(rs.agreement);
    if (ait == s.agreements.end()) return rejected(RejectReason::UnknownAgreement);
    SharingAgreement& agr = ait->second;
    if (sender != agr.owner && sender != agr.user) return rejected(RejectReason::NotAParty);
    if (agr.state != AgreementState::Active) return rejected(RejectReason::NotActive);
    if (rs.epoch < agr.start_epoch || rs.epoch >= agr.start_epoch + agr.terms.duration) {
        return rejected(RejectReason::EpochOutOfRange);
    }
    agr.samples_total += 1;
    if (!rs.sample.success) {
        agr.incidents.push_back({rs.epoch, IncidentKind::ServiceFailure});
    } else if (rs.sample.latency > agr.terms.max_latency) {
        agr.incidents.push_back({rs.epoch, IncidentKind::LatencyViolation});
    } else {
        agr.samples_ok += 1;
    }
    return applied();
}

Receipt exec_complete(State& s, const NodeId& sender, const Complete& c) {
    auto ait = s.agreements.find(c.agreement);
    if (ait == s.agreements.end()) return rejected(RejectReason::UnknownAgreement);
    SharingAgreement& agr = ait->second;
    if (sender != agr.owner && sender != agr.user) return rejected(RejectReason::NotAParty);
    if (agr.state != AgreementState::Active) return rejected(RejectReason::NotActive);
    if (c.epoch < agr.start_epoch + agr.terms.duration) {
        return rejected(RejectReason::DurationNotElapsed);
    }
    agr.state = verdict_for(agr);

    // Settle the payment escrow: the owner is paid on a fulfilled SLA, the
    // user refunded on a violated one.
    auto user_acc = s.accounts.find(agr.user);
    auto owner_acc = s.accounts.find(agr.owner);
    if (user_acc != s.accounts.end() && owner_acc != s.accounts.end()) {
        user_acc->second.escrowed -= agr.payment_escrow;
        if (agr.state == AgreementState::Completed) {
            owner_acc->second.balance += agr.payment_escrow;
        } else {
            user_acc->second.balance += agr.payment_escrow;
        }
        agr.payment_escrow = 0;
    }

    Receipt r = applied();
    r.verdict = agr.state;
    return r;
}

Receipt exec_release(State& s, const NodeId& sender, const Release& rel) {
    auto ait = s.agreements.find(rel.agreement);
    if (ait == s.agreements.end()) return rejected(RejectReason::UnknownAgreement);
    SharingAgreement& agr = ait->second;
    if (sender != agr.owner && sender != agr.user) return rejected(RejectReason::NotAParty);
    if (!is_settled(agr.state)) return rejected(RejectReason::StillActive);
    auto lit = s.listings.find(agr.listing);
    if (lit != s.listings.end()) {
        lit->second.allocated -= agr.slots;
    }
    agr.state = AgreementState::Obsolete;
    return applied();
}

}  // namespace

Currency State::circulating() const {
    Currency total = 0;
    for (const auto& [id, acc] : accounts) total += acc.balance + acc.escrowed;
    return total;
}

double update_score(ReputationRecord& rec, bool satisfactory, const Params& p,
                    std::uint64_t height) {
    if (satisfactory) {
        rec.score = p.score_lambda * rec.score + (1.0 - p.score_lambda);
    } else {
        rec.score = p.score_gamma * rec.score;
    }
    rec.last_update_height = height;
    return rec.score;
}

std::optional<double> get_reputation(const State& s, const NodeId& node) {
    auto it = s.reputations.find(node);
    if (it == s.reputations.end()) return std::nullopt;
    return it->second.score;
}

std::optional<AgreementState> preview_verdict(const State& s, std::uint64_t agreement) {
    auto it = s.agreements.find(agreement);
    if (it == s.agreements.end() || it->second.state != AgreementState::Active) {
        return std::nullopt;
    }
    return verdict_for(it->second);
}

Receipt execute(State& s, const NodeId& sender, const Call& call, const Params& p,
                std::uint64_t height) {
    return std::visit(
        [&](const auto& op) -> Receipt {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, RegisterNode>) {
                return exec_register(s, op, p, height);
            } else if constexpr (std::is_same_v<T, SubmitFeedback>) {
                return exec_feedback(s, sender, op.fb, p, height);
            } else if constexpr (std::is_same_v<T, ListResource>) {
                return exec_list(s, sender, op);
            } else if constexpr (std::is_same_v<T, Allocate>) {
                return exec_allocate(s, sender, op);
            } else if constexpr (std::is_same_v<T, Release>) {
                return exec_release(s, sender, op);
            } else if constexpr (std::is_same_v<T, RecordService>) {
                return exec_record(s, sender, op);
            } else {
                return exec_complete(s, sender, op);
            }
        },
        call);
}

const char* reject_reason_name(RejectReason r) {
    switch (r) {
        case RejectReason::None: return "none";
        case RejectReason::DuplicateAttributes: return "duplicate_attributes";
        case RejectReason::InsufficientDeposit: return "insufficient_deposit";
        case RejectReason::UnknownSender: return "unknown_sender";
        case RejectReason::BadNonce: return "bad_nonce";
        case RejectReason::BadSignature: return "bad_signature";
        case RejectReason::SelfFeedback: return "self_feedback";
        case RejectReason::NoEvidence: return "no_evidence";
        case RejectReason::InsufficientEscrow: return "insufficient_escrow";
        case RejectReason::UnknownAgreement: return "unknown_agreement";
        case RejectReason::UnknownNode: return "unknown_node";
        case RejectReason::NotAnOwner: return "not_an_owner";
        case RejectReason::NotAUser: return "not_a_user";
        case RejectReason::DuplicateListing: return "duplicate_listing";
        case RejectReason::UnknownListing: return "unknown_listing";
        case RejectReason::CapacityExceeded: return "capacity_exceeded";
        case RejectReason::InactiveListing: return "inactive_listing";
        case RejectReason::StillActive: return "still_active";
        case RejectReason::InsufficientFunds: return "insufficient_funds";
        case RejectReason::NotActive: return "not_active";
        case RejectReason::EpochOutOfRange: return "epoch_out_of_range";
        case RejectReason::DurationNotElapsed: return "duration_not_elapsed";
        case RejectReason::NotAParty: return "not_a_party";
    }
    return "unknown";
}

}  // namespace trmsim::contracts
