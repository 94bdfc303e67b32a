pub mod laurent;
pub mod symgroup;
pub mod tableaux;
pub mod rs;
pub mod kl;
pub mod webs;
pub mod gentau;
