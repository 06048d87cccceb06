#include "sciflow/model.hpp"
#include "sciflow/error.hpp"

namespace sciflow {

const char* to_string(Stance s) {
    switch (s) {
        case Stance::contrarian: return "contrarian";
        case Stance::conformist: return "conformist";
        default: return "unlabeled";
    }
}

const char* to_string(Credential c) {
    switch (c) {
        case Credential::physician: return "physician";
        case Credential::scientist: return "scientist";
        case Credential::science_communicator: return "science_communicator";
        case Credential::science_org: return "science_org";
        case Credential::other_authority: return "other_authority";
        case Credential::non_scientific: return "non_scientific";
        default: return "unlabeled";
    }
}

const char* to_string(PostKind k) {
    return k == PostKind::retweet ? "retweet" : "original";
}

const char* to_string(Emotion e) {
    switch (e) {
        case Emotion::anger: return "anger";
        case Emotion::disgust: return "disgust";
        case Emotion::fear: return "fear";
        case Emotion::joy: return "joy";
        case Emotion::neutral: return "neutral";
        case Emotion::sadness: return "sadness";
        default: return "surprise";
    }
}

Stance parse_stance(const std::string& s) {
    if (s == "contrarian") return Stance::contrarian;
    if (s == "conformist") return Stance::conformist;
    if (s == "unlabeled") return Stance::unlabeled;
    throw Error("unknown stance: '" + s + "'");
}

Credential parse_credential(const std::string& s) {
    if (s == "physician") return Credential::physician;
    if (s == "scientist") return Credential::scientist;
    if (s == "science_communicator") return Credential::science_communicator;
    if (s == "science_org") return Credential::science_org;
    if (s == "other_authority") return Credential::other_authority;
    if (s == "non_scientific") return Credential::non_scientific;
    if (s == "unlabeled") return Credential::unlabeled;
    throw Error("unknown credential: '" + s + "'");
}

PostKind parse_post_kind(const std::string& s) {
    if (s == "original") return PostKind::original;
    if (s == "retweet") return PostKind::retweet;
    throw Error("unknown post kind: '" + s + "'");
}

Emotion parse_emotion(const std::string& s) {
    if (s == "anger") return Emotion::anger;
    if (s == "disgust") return Emotion::disgust;
    if (s == "fear") return Emotion::fear;
    if (s == "joy") return Emotion::joy;
    if (s == "neutral") return Emotion::neutral;
    if (s == "sadness") return Emotion::sadness;
    if (s == "surprise") return Emotion::surprise;
    throw Error("unknown emotion: '" + s + "'");
}

void rebuild_doi_index(Corpus& corpus) {
    corpus.doi_index.clear();
    for (std::size_t i = 0; i < corpus.posts.size(); ++i)
        for (const auto& doi : corpus.posts[i].dois)
            corpus.doi_index[doi].post_idx.push_back(i);
    for (std::size_t i = 0; i < corpus.news.size(); ++i)
        for (const auto& doi : corpus.news[i].dois)
            corpus.doi_index[doi].news_idx.push_back(i);
}

std::map<std::string, std::size_t> build_post_index(const Corpus& corpus) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < corpus.posts.size(); ++i)
        index.emplace(corpus.posts[i].post_id, i);
    return index;
}

std::optional<std::string> resolve_retweet_target(const Corpus& corpus,
                                                  const std::map<std::string, std::size_t>& post_index,
                                                  const PostEvent& post) {
    if (!post.is_retweet()) return std::nullopt;
    if (post.retweeted_author_id) return post.retweeted_author_id;
    if (post.retweeted_post_id) {
        auto it = post_index.find(*post.retweeted_post_id);
        if (it != post_index.end()) return corpus.posts[it->second].author_id;
    }
    return std::nullopt;
}

} // namespace sciflow
