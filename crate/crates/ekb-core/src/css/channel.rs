//! A synchronous channel with a scanner at each endpoint.

use crate::crypto::MediaType;

use super::database::{scan, ScanDatabase, ScanVerdict};

/// One scanner configuration acting as the delivery medium.
#[derive(Debug, Clone)]
pub struct Channel {
    pub name: String,
    pub database: ScanDatabase,
}

impl Channel {
    pub fn new(name: &str, database: ScanDatabase) -> Channel {
        Channel {
            name: name.to_string(),
            database,
        }
    }
}

/// Everything observable about one send attempt. When the sender-side scan
/// flags, nothing is delivered and there is no receiver verdict; otherwise
/// the payload arrives verbatim and is scanned again on arrival.
#[derive(Debug, Clone, PartialEq)]
pub struct DeliveryReport {
    pub channel: String,
    pub sender: String,
    pub receiver: String,
    pub media: MediaType,
    pub sender_verdict: ScanVerdict,
    pub receiver_verdict: Option<ScanVerdict>,
    pub delivered: Option<Vec<u8>>,
}

impl DeliveryReport {
    /// True when the sender endpoint refused to transmit.
    pub fn blocked(&self) -> bool {
        self.delivered.is_none()
    }
}

/// Runs one payload through the channel: scan at the sender, deliver only
/// if clean, scan again at the receiver.
pub fn channel_send(
    channel: &Channel,
    sender: &str,
    receiver: &str,
    media: MediaType,
    payload: &[u8],
) -> DeliveryReport {
    let sender_verdict = scan(&channel.database, media, payload);
    if sender_verdict.is_flagged() {
        return DeliveryReport {
            channel: channel.name.clone(),
            sender: sender.to_string(),
            receiver: receiver.to_string(),
            media,
            sender_verdict,
            receiver_verdict: None,
            delivered: None,
        };
    }
    let delivered = payload.to_vec();
    let receiver_verdict = scan(&channel.database, media, &delivered);
    DeliveryReport {
        channel: channel.name.clone(),
        sender: sender.to_string(),
        receiver: receiver.to_string(),
        media,
        sender_verdict,
        receiver_verdict: Some(receiver_verdict),
        delivered: Some(delivered),
    }
}
