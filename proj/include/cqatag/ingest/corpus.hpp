#pragma once

#include "cqatag/ingest/post.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace cqatag::ingest {

/// All retained posts of one domain. Immutable once built.
class DomainCorpus {
public:
    DomainCorpus() = default;

    const std::string& domain() const { return domain_; }
    const std::vector<Post>& questions() const { return questions_; }
    const std::vector<Post>& answers() const { return answers_; }

    /// Answers linked to a question, in dump order. Empty when none.
    std::span<const Post* const> answers_of(PostId question_id) const;

    /// Answers whose ParentId does not resolve to a question in the corpus.
    bool is_orphan(const Post& answer) const;
    std::size_t orphan_count() const { return orphans_.size(); }

    /// Index of a question in questions(), or npos.
    std::size_t question_index(PostId id) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    /// Questions restricted to a subset of ids, preserving corpus order.
    std::vector<const Post*> select_questions(const std::vector<PostId>& ids) const;

private:
    friend DomainCorpus build_corpus(std::vector<Post> posts, std::string domain);

    std::string domain_;
    std::vector<Post> questions_;
    std::vector<Post> answers_;
    std::unordered_map<PostId, std::size_t> question_pos_;
    std::unordered_map<PostId, std::vector<const Post*>> answer_index_;
    std::unordered_set<PostId> orphans_;
};

/// Separates questions from answers and links answers to their parents.
/// Throws UserError on duplicate post ids.
DomainCorpus build_corpus(std::vector<Post> posts, std::string domain);

} // namespace cqatag::ingest
