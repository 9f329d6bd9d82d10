#include "cqatag/ingest/corpus.hpp"

#include "cqatag/error.hpp"

#include <algorithm>

namespace cqatag::ingest {

std::span<const Post* const> DomainCorpus::answers_of(PostId question_id) const {
    const auto it = answer_index_.find(question_id);
    if (it == answer_index_.end()) return {};
    return it->second;
}

bool DomainCorpus::is_orphan(const Post& answer) const { return orphans_.contains(answer.id); }

std::size_t DomainCorpus::question_index(PostId id) const {
    const auto it = question_pos_.find(id);
    return it == question_pos_.end() ? npos : it->second;
}

std::vector<const Post*> DomainCorpus::select_questions(const std::vector<PostId>& ids) const {
    std::vector<std::size_t> positions;
    positions.reserve(ids.size());
    for (PostId id : ids) {
        const auto pos = question_index(id);
        if (pos == npos) throw UserError("question " + std::to_string(id) + " not in corpus");
        positions.push_back(pos);
    }
    std::sort(positions.begin(), positions.end());
    std::vector<const Post*> out;
    out.reserve(positions.size());
    for (auto pos : positions) out.push_back(&questions_[pos]);
    return out;
}

DomainCorpus build_corpus(std::vector<Post> posts, std::string domain) {
    DomainCorpus c;
    c.domain_ = std::move(domain);
    std::unordered_set<PostId> seen;
    seen.reserve(posts.size());
    for (auto& p : posts) {
        if (!seen.insert(p.id).second) {
            throw UserError("duplicate post id " + std::to_string(p.id) + " in domain " +
                            c.domain_);
        }
        (p.is_question() ? c.questions_ : c.answers_).push_back(std::move(p));
    }
    c.question_pos_.reserve(c.questions_.size());
    for (std::size_t i = 0; i < c.questions_.size(); ++i) c.question_pos_[c.questions_[i].id] = i;
    for (const auto& a : c.answers_) {
        if (a.parent_id && c.question_pos_.contains(*a.parent_id)) {
            c.answer_index_[*a.parent_id].push_back(&a);
        } else {
            c.orphans_.insert(a.id);
        }
    }
    return c;
}

} // namespace cqatag::ingest
