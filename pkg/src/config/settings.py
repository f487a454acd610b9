from typing import Optional, Dict, Any, Literal
from pathlib import Path

import yaml
from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class LoggingSettings(BaseModel):
    """
    Einstellungen für das Logging-System.
    Definiert alle logging-spezifischen Konfigurationsoptionen.
    """
    # Basis-Einstellungen
    log_dir: str = Field(
        default="logs",
        description="Verzeichnis für Log-Dateien"
    )
    log_level: str = Field(
        default="INFO",
        description="Standard Log-Level"
    )
    debug_mode: bool = Field(
        default=False,
        description="Debug-Modus aktivieren"
    )
    colored_console: bool = Field(
        default=True,
        description="Farbige Konsolenausgabe über coloredlogs"
    )

    # Performance-Logging
    enable_performance_logging: bool = Field(
        default=True,
        description="Performance-Logging (Stufenzeiten) aktivieren"
    )

    # Log-Rotation
    max_file_size: int = Field(
        default=10485760,  # 10MB
        description="Maximale Größe einer Log-Datei"
    )
    backup_count: int = Field(
        default=5,
        description="Anzahl der Backup-Dateien bei Rotation"
    )


class DetectionSettings(BaseModel):
    """
    Standardwerte der Community-Erkennung.
    Werden in eine CoinConfig übernommen, sofern die CLI nichts überschreibt.
    """
    exact_threshold: int = Field(
        default=20,
        ge=1,
        description="Maximale Extent-Größe für die exakte Stabilitätsberechnung"
    )
    sampling_budget: int = Field(
        default=4096,
        ge=64,
        description="Anzahl der Stichproben |S| für die Stabilitätsschätzung"
    )
    seed: int = Field(
        default=0,
        description="Seed für die Stichprobenziehung"
    )
    error_constant: float = Field(
        default=10.0,
        gt=0,
        description="Konstante C der Fehlerschranke C·log|S|/|S|"
    )
    singleton_backfill: bool = Field(
        default=True,
        description="Nicht abgedeckte Knoten als Singleton-Communities ergänzen"
    )
    max_passes: Optional[int] = Field(
        default=None,
        ge=1,
        description="Maximale Anzahl Perkolationsdurchläufe (None = automatisch)"
    )
    merge_sizes: Literal["current", "original"] = Field(
        default="current",
        description="Größen für den Perkolationstest: aktuelle oder ursprüngliche Cliquen"
    )
    overlap_policy: Literal["resolve", "strict"] = Field(
        default="resolve",
        description="Umgang mit Knoten in mehreren perkolierten Mengen"
    )


class ConceptSettings(BaseModel):
    """Einstellungen für die vollständige Verbandsaufzählung."""
    object_limit: int = Field(
        default=512,
        ge=1,
        description="Maximale Objektanzahl für enumerate_concepts"
    )


class BenchSettings(BaseModel):
    """
    Benchmark-Konfiguration.
    Datensätze werden vom Benutzer bereitgestellt (siehe README).
    """
    repeats: int = Field(
        default=100,
        ge=1,
        description="Wiederholungen pro Datensatz"
    )
    datasets: list[str] = Field(
        default=["karate.gml", "dolphins.gml", "football.gml", "polbooks.gml"],
        description="Dateinamen der Benchmark-Datensätze"
    )
    output_csv: str = Field(
        default="bench_results.csv",
        description="Dateiname der CSV-Ergebnistabelle"
    )


class Settings(BaseSettings):
    """
    Haupt-Konfigurationsklasse der Anwendung.
    Zentrale Verwaltung aller Einstellungen.
    """
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_nested_delimiter="__",
        case_sensitive=False,
        extra="ignore",
        populate_by_name=True,
    )

    # Umgebungseinstellungen
    environment: str = Field(
        default="development",
        description="Ausführungsumgebung (development/test/production)"
    )
    debug: bool = Field(
        default=False,
        description="Debug-Modus für die Anwendung"
    )
    seed: Optional[int] = Field(
        default=None,
        description="Seed-Fallback, wenn die CLI keinen Seed erhält",
        alias="COIN_SEED"
    )

    # Komponenten-Einstellungen
    logging: LoggingSettings = Field(
        default_factory=LoggingSettings,
        description="Logging-Einstellungen"
    )
    detection: DetectionSettings = Field(
        default_factory=DetectionSettings,
        description="Einstellungen der Community-Erkennung"
    )
    concepts: ConceptSettings = Field(
        default_factory=ConceptSettings,
        description="Einstellungen der Verbandsaufzählung"
    )
    bench: BenchSettings = Field(
        default_factory=BenchSettings,
        description="Benchmark-Einstellungen"
    )

    @field_validator("environment")
    @classmethod
    def normalize_environment(cls, v: str) -> str:
        """Normalisiert den Umgebungsnamen."""
        return v.strip().lower()

    @classmethod
    def from_yaml(cls, path: str | Path) -> "Settings":
        """
        Lädt Einstellungen aus einer YAML-Datei.

        Umgebungsvariablen haben Vorrang vor Dateiwerten; eine fehlende
        Datei ergibt die Standardeinstellungen.

        Beispiel:
            settings = Settings.from_yaml("config.yaml")
            budget = settings.detection.sampling_budget
        """
        path = Path(path)
        if not path.is_file():
            return cls()
        data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        # Umgebungsvariablen über ein leeres Settings-Objekt ermitteln
        env_values = cls().model_dump(exclude_defaults=True, by_alias=False)
        merged = _deep_merge(data, env_values)
        return cls(**merged)

    def detection_config(self, **overrides: Any):
        """
        Erzeugt eine validierte CoinConfig aus den Detection-Einstellungen.

        Args:
            **overrides: Werte, die Vorrang haben (None wird ignoriert)

        Returns:
            CoinConfig für einen Pipeline-Lauf
        """
        from src.backend.models.community import CoinConfig

        values = self.detection.model_dump()
        if self.seed is not None:
            values["seed"] = self.seed
        values.update({k: v for k, v in overrides.items() if v is not None})
        return CoinConfig(**values)


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    result = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(result.get(key), dict):
            result[key] = _deep_merge(result[key], value)
        else:
            result[key] = value
    return result


# Globale Instanz der Settings
settings = Settings()


def get_settings() -> Settings:
    """
    Getter-Funktion für die Anwendungseinstellungen.

    Returns:
        Settings: Konfigurierte Settings-Instanz

    Beispiel:
        settings = get_settings()
        threshold = settings.detection.exact_threshold
    """
    return settings
