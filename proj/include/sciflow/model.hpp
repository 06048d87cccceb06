#ifndef SCIFLOW_MODEL_HPP
#define SCIFLOW_MODEL_HPP

#include "sciflow/time.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sciflow {

enum class Stance { contrarian, conformist, unlabeled };

enum class Credential {
    physician,
    scientist,
    science_communicator,
    science_org,
    other_authority,
    non_scientific,
    unlabeled
};

enum class PostKind { original, retweet };

enum class Emotion { anger, disgust, fear, joy, neutral, sadness, surprise };
inline constexpr int kEmotionCount = 7;

const char* to_string(Stance s);
const char* to_string(Credential c);
const char* to_string(PostKind k);
const char* to_string(Emotion e);
Stance parse_stance(const std::string& s);
Credential parse_credential(const std::string& s);
PostKind parse_post_kind(const std::string& s);
Emotion parse_emotion(const std::string& s);

struct UserRecord {
    std::string user_id;
    Stance stance = Stance::unlabeled;
    std::int64_t followers = 0;
    std::int64_t following = 0;
    std::optional<Timestamp> created_at;
    bool verified = false;
    Credential credential = Credential::unlabeled;
    std::optional<double> bot_score;  // in [0,1] when present

    bool operator==(const UserRecord&) const = default;
};

struct PostEvent {
    std::string post_id;
    std::string author_id;
    Timestamp timestamp = 0;
    PostKind kind = PostKind::original;
    std::optional<std::string> retweeted_post_id;    // present iff kind == retweet
    std::optional<std::string> retweeted_author_id;
    std::vector<std::string> dois;                   // sorted, unique
    std::optional<std::string> topic_label;
    std::optional<Emotion> emotion_label;
    std::vector<std::string> terms;                  // lowercased tokens
    std::vector<std::string> hashtags;

    bool is_retweet() const { return kind == PostKind::retweet; }
    bool operator==(const PostEvent&) const = default;
};

struct NewsMention {
    std::string article_id;
    std::string outlet_domain;  // nonempty, lowercased
    Timestamp timestamp = 0;
    std::string title;
    std::vector<std::string> dois;  // sorted, unique
    std::optional<double> trust_score;      // in [0,1] when present
    std::optional<std::int64_t> daily_visits;

    bool operator==(const NewsMention&) const = default;
};

struct DoiRefs {
    std::vector<std::size_t> post_idx;
    std::vector<std::size_t> news_idx;

    bool operator==(const DoiRefs&) const = default;
};

// Immutable once loaded; safe to share across parallel readers.
struct Corpus {
    std::map<std::string, UserRecord> users;
    std::vector<PostEvent> posts;      // sorted by (timestamp, post_id)
    std::vector<NewsMention> news;     // sorted by (timestamp, article_id)
    std::map<std::string, DoiRefs> doi_index;

    bool operator==(const Corpus&) const = default;

    const UserRecord* find_user(const std::string& id) const {
        auto it = users.find(id);
        return it == users.end() ? nullptr : &it->second;
    }
    Stance stance_of(const std::string& id) const {
        const UserRecord* u = find_user(id);
        return u ? u->stance : Stance::unlabeled;
    }
};

void rebuild_doi_index(Corpus& corpus);

// post_id -> index into corpus.posts
std::map<std::string, std::size_t> build_post_index(const Corpus& corpus);

// The account a retweet amplifies: the explicit retweeted_author_id when
// present, otherwise the author of the retweeted post if it is in the corpus.
std::optional<std::string> resolve_retweet_target(const Corpus& corpus,
                                                  const std::map<std::string, std::size_t>& post_index,
                                                  const PostEvent& post);

} // namespace sciflow

#endif
